#pragma once

// Prompt-splice bookkeeping: a decoder input is always laid out as
//   [BOS][instruction prefix][image tokens][instruction suffix][history]
// and every module that needs to know where the image (or anything else)
// lives reads it from a PromptLayout instead of re-deriving offsets.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "visteer/attention.hpp"

namespace visteer {

using TokenId = std::int32_t;

struct PromptLayout {
    TokenSpan bos;
    TokenSpan instr_prefix;
    TokenSpan image;
    TokenSpan instr_suffix;
    TokenSpan history;

    std::size_t total() const { return history.end; }

    // Spans must be contiguous, in order, starting at 0.
    void validate() const {
        const TokenSpan spans[] = {bos, instr_prefix, image, instr_suffix, history};
        std::size_t cursor = 0;
        for (const TokenSpan& s : spans) {
            if (s.start != cursor || s.end < s.start)
                throw std::invalid_argument("PromptLayout: spans must be contiguous and ordered");
            cursor = s.end;
        }
    }

    // Labeled covering spans for attention-mass accounting. The two
    // instruction spans share one label and accumulate together.
    std::vector<std::pair<std::string, TokenSpan>> mass_spans() const {
        return {{"bos", bos},
                {"instruction", instr_prefix},
                {"image", image},
                {"instruction", instr_suffix},
                {"history", history}};
    }

    friend bool operator==(const PromptLayout&, const PromptLayout&) = default;
};

// Layout of the same prompt with the image block removed.
inline PromptLayout without_image(const PromptLayout& layout) {
    const std::size_t n_img = layout.image.size();
    PromptLayout out = layout;
    out.image = {layout.image.start, layout.image.start};
    out.instr_suffix = {layout.instr_suffix.start - n_img, layout.instr_suffix.end - n_img};
    out.history = {layout.history.start - n_img, layout.history.end - n_img};
    return out;
}

// Raw visual features headed for the projector. Width must match the
// projector input width (the stub projector uses d_model).
struct ImageDescriptor {
    std::vector<std::vector<float>> features;

    void validate() const {
        if (features.empty()) throw std::invalid_argument("ImageDescriptor: no features");
        const std::size_t w = features.front().size();
        for (const auto& f : features) {
            if (f.size() != w)
                throw std::invalid_argument("ImageDescriptor: ragged feature widths");
            for (float x : f)
                if (!std::isfinite(x))
                    throw std::invalid_argument("ImageDescriptor: non-finite feature");
        }
    }
};

}  // namespace visteer
