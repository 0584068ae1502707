#pragma once

// Causal multi-head attention primitives plus the span-amplification edit
// applied to pre-softmax rows. Inputs and outputs are f32; exponentials and
// reductions run in double so that row sums hold a 1e-6 budget even at
// sequence lengths around a thousand.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "visteer/matrix.hpp"

namespace visteer {

// Half-open token index range [start, end).
struct TokenSpan {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - start; }
    bool empty() const { return start == end; }
    bool contains(std::size_t i) const { return i >= start && i < end; }

    friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

// One attention row: pre-softmax scores and, once computed, their softmax.
// Masked positions carry -inf logits and zero probability.
struct AttentionRow {
    std::vector<float> logits;
    std::optional<std::vector<float>> probs;

    std::size_t size() const { return logits.size(); }
};

inline constexpr float kMaskValue = -std::numeric_limits<float>::infinity();

// Numerically-stabilized softmax. Rejects empty and non-finite input; for
// rows containing -inf mask values use masked_softmax below.
inline std::vector<float> softmax(std::span<const float> logits) {
    if (logits.empty()) throw std::invalid_argument("softmax: empty input");
    float max_v = logits[0];
    for (float x : logits) {
        if (!std::isfinite(x)) throw std::invalid_argument("softmax: non-finite input");
        if (x > max_v) max_v = x;
    }
    std::vector<double> e(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        e[i] = std::exp(static_cast<double>(logits[i]) - static_cast<double>(max_v));
        sum += e[i];
    }
    std::vector<float> out(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) out[i] = static_cast<float>(e[i] / sum);
    return out;
}

// Softmax over a row that may contain -inf masks; masked entries get
// probability exactly zero. At least one entry must be unmasked.
inline std::vector<float> masked_softmax(std::span<const float> logits) {
    if (logits.empty()) throw std::invalid_argument("masked_softmax: empty input");
    float max_v = kMaskValue;
    for (float x : logits) {
        if (std::isnan(x) || x == std::numeric_limits<float>::infinity())
            throw std::invalid_argument("masked_softmax: NaN or +inf input");
        if (x > max_v) max_v = x;
    }
    if (max_v == kMaskValue) throw std::invalid_argument("masked_softmax: fully masked row");
    std::vector<float> out(logits.size());
    std::vector<double> e(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        e[i] = (logits[i] == kMaskValue)
                   ? 0.0
                   : std::exp(static_cast<double>(logits[i]) - static_cast<double>(max_v));
        sum += e[i];
    }
    for (std::size_t i = 0; i < logits.size(); ++i) out[i] = static_cast<float>(e[i] / sum);
    return out;
}

// Adds alpha * |logit| to every unmasked logit inside the span. Masked (-inf)
// entries are left untouched: the mask must survive the edit. Invalidates any
// cached probs.
inline void amplify_span_inplace(AttentionRow& row, TokenSpan span, float alpha) {
    if (alpha < 0.0f || std::isnan(alpha))
        throw std::invalid_argument("amplify_span: alpha must be >= 0");
    if (span.start > span.end || span.end > row.logits.size())
        throw std::out_of_range("amplify_span: span out of bounds");
    row.probs.reset();
    if (alpha == 0.0f) return;
    for (std::size_t j = span.start; j < span.end; ++j) {
        const float v = row.logits[j];
        if (v == kMaskValue) continue;
        row.logits[j] = v + alpha * std::fabs(v);
    }
}

inline AttentionRow amplify_span(AttentionRow row, TokenSpan span, float alpha) {
    amplify_span_inplace(row, span, alpha);
    return row;
}

// Hook invoked on each masked pre-softmax row before its softmax.
using RowEditHook = std::function<void(std::size_t row_index, AttentionRow& row)>;

struct AttentionResult {
    Matrix output;                   // n_q x d_v
    std::vector<AttentionRow> rows;  // one per query, post-edit logits + probs
};

// Scaled dot-product attention for one head. Q: n_q x d_k, K: n_k x d_k,
// V: n_k x d_v. With `causal` the last query row is aligned to the last key,
// so query i may attend keys j <= i + (n_k - n_q).
inline AttentionResult attention_head(const Matrix& q, const Matrix& k, const Matrix& v,
                                      bool causal = true, const RowEditHook& edit = {}) {
    if (q.cols != k.cols) throw std::invalid_argument("attention_head: Q/K column mismatch");
    if (k.rows != v.rows) throw std::invalid_argument("attention_head: K/V row mismatch");
    if (q.rows == 0 || k.rows == 0) throw std::invalid_argument("attention_head: empty input");
    if (causal && k.rows < q.rows)
        throw std::invalid_argument("attention_head: causal needs n_k >= n_q");

    const float inv_scale = 1.0f / std::sqrt(static_cast<float>(q.cols));
    const std::size_t offset = k.rows - q.rows;

    AttentionResult res;
    res.output = Matrix(q.rows, v.cols);
    res.rows.reserve(q.rows);

    for (std::size_t i = 0; i < q.rows; ++i) {
        AttentionRow row;
        row.logits.resize(k.rows);
        for (std::size_t j = 0; j < k.rows; ++j) {
            if (causal && j > i + offset) {
                row.logits[j] = kMaskValue;
                continue;
            }
            float dot = 0.0f;
            for (std::size_t c = 0; c < q.cols; ++c) dot += q(i, c) * k(j, c);
            row.logits[j] = dot * inv_scale;
        }
        if (edit) edit(i, row);
        row.probs = masked_softmax(row.logits);
        for (std::size_t c = 0; c < v.cols; ++c) {
            float acc = 0.0f;
            for (std::size_t j = 0; j < k.rows; ++j) acc += (*row.probs)[j] * v(j, c);
            res.output(i, c) = acc;
        }
        res.rows.push_back(std::move(row));
    }
    return res;
}

// Sums row probability over labeled spans. The spans must be disjoint and
// cover [0, n) exactly; spans sharing a label accumulate into one entry.
inline std::map<std::string, float> span_mass(
    const AttentionRow& row, const std::vector<std::pair<std::string, TokenSpan>>& spans) {
    if (!row.probs) throw std::invalid_argument("span_mass: row has no probs");
    const std::size_t n = row.probs->size();

    std::vector<std::pair<TokenSpan, std::size_t>> ordered;  // span -> index into `spans`
    ordered.reserve(spans.size());
    for (std::size_t i = 0; i < spans.size(); ++i) {
        const TokenSpan s = spans[i].second;
        if (s.start > s.end || s.end > n) throw std::out_of_range("span_mass: span out of bounds");
        ordered.emplace_back(s, i);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first.start < b.first.start; });
    std::size_t cursor = 0;
    for (const auto& [s, idx] : ordered) {
        if (s.start != cursor)
            throw std::invalid_argument("span_mass: spans must be disjoint and cover the row");
        cursor = s.end;
    }
    if (cursor != n)
        throw std::invalid_argument("span_mass: spans must cover the full row");

    std::map<std::string, double> acc;
    for (const auto& [label, s] : spans) {
        double m = 0.0;
        for (std::size_t j = s.start; j < s.end; ++j) m += (*row.probs)[j];
        acc[label] += m;
    }
    std::map<std::string, float> out;
    for (const auto& [label, m] : acc) out[label] = static_cast<float>(m);
    return out;
}

}  // namespace visteer
