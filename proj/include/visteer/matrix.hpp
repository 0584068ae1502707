#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace visteer {

// Dense row-major f32 matrix. Plain storage, no expression templates; the
// models here are small enough that naive loops are the right tool.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<float> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0f) {}

    float& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    float operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::span<float> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::span<const float> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

    void append_row(std::span<const float> v) {
        if (v.size() != cols) throw std::invalid_argument("Matrix::append_row: width mismatch");
        data.insert(data.end(), v.begin(), v.end());
        ++rows;
    }

    bool all_finite() const {
        for (float x : data)
            if (!std::isfinite(x)) return false;
        return true;
    }
};

}  // namespace visteer
