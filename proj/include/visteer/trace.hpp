#pragma once

// Forward-pass traces and the decoder interface the generation engine runs
// against. The toy transformer implements DecoderModel; tests plug in stub
// models with scripted behavior.

#include <cstdint>
#include <functional>
#include <vector>

#include "visteer/attention.hpp"
#include "visteer/matrix.hpp"
#include "visteer/prompt.hpp"

namespace visteer {

using LogitVector = std::vector<float>;

// Invoked during a forward pass on the last pre-softmax attention row of
// every (layer, head) pair, after causal masking and before softmax.
using InterventionHook =
    std::function<void(std::size_t layer, std::size_t head, const PromptLayout& layout,
                       AttentionRow& row)>;

struct ForwardTrace {
    LogitVector logits;                               // last position, vocab-sized
    std::vector<std::vector<AttentionRow>> attention; // [layer][head], last row
    std::vector<std::vector<float>> hidden;           // per-layer residual, last position
};

class DecoderModel {
  public:
    virtual ~DecoderModel() = default;

    virtual std::size_t n_layers() const = 0;
    virtual std::size_t max_seq() const = 0;
    virtual std::size_t vocab_size() const = 0;
    virtual std::vector<float> embed_token(TokenId id) const = 0;
    virtual ForwardTrace forward(const Matrix& seq, const PromptLayout& layout,
                                 const InterventionHook& hook = {}) const = 0;
};

struct SimilarityProfile {
    std::vector<float> values;          // cosine of consecutive per-layer hidden states
    std::uint32_t zero_norm_pairs = 0;  // pairs where a zero vector forced similarity 0
};

// Cosine similarity of consecutive last-token hidden states, one value per
// adjacent layer pair. A zero-norm vector yields similarity 0 and bumps the
// warning counter.
inline SimilarityProfile layer_similarity(const ForwardTrace& trace) {
    if (trace.hidden.size() < 2)
        throw std::invalid_argument("layer_similarity: need at least 2 layers");
    SimilarityProfile prof;
    prof.values.reserve(trace.hidden.size() - 1);
    for (std::size_t l = 0; l + 1 < trace.hidden.size(); ++l) {
        const auto& a = trace.hidden[l];
        const auto& b = trace.hidden[l + 1];
        if (a.size() != b.size())
            throw std::invalid_argument("layer_similarity: hidden width mismatch");
        float dot = 0.0f, na = 0.0f, nb = 0.0f;
        for (std::size_t i = 0; i < a.size(); ++i) {
            dot += a[i] * b[i];
            na += a[i] * a[i];
            nb += b[i] * b[i];
        }
        if (na == 0.0f || nb == 0.0f) {
            prof.values.push_back(0.0f);
            ++prof.zero_norm_pairs;
            continue;
        }
        float c = dot / (std::sqrt(na) * std::sqrt(nb));
        if (c > 1.0f) c = 1.0f;
        if (c < -1.0f) c = -1.0f;
        prof.values.push_back(c);
    }
    return prof;
}

}  // namespace visteer
