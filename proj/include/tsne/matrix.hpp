#pragma once

#include <cmath>
#include <cstddef>
#include <cstring>
#include <initializer_list>
#include <vector>

#include "tsne/errors.hpp"

namespace tsne {

// Dense row-major matrix of doubles. Rows are contiguous, so row(i) can be
// handed straight to the SIMD kernels.
class Matrix {
  public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), buf_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<double>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        buf_.reserve(rows_ * cols_);
        for (const auto& r : init) {
            if (r.size() != cols_) throw DataError("matrix literal: ragged rows");
            buf_.insert(buf_.end(), r.begin(), r.end());
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return buf_.size(); }

    double* data() { return buf_.data(); }
    const double* data() const { return buf_.data(); }

    double* row(std::size_t i) { return buf_.data() + i * cols_; }
    const double* row(std::size_t i) const { return buf_.data() + i * cols_; }

    double& operator()(std::size_t i, std::size_t j) { return buf_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return buf_[i * cols_ + j]; }

    bool all_finite() const {
        for (double v : buf_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    // Bitwise comparison; the reproducibility tests want exact equality,
    // not tolerance-based closeness.
    bool same_bits(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ &&
               (buf_.empty() ||
                std::memcmp(buf_.data(), other.buf_.data(), buf_.size() * sizeof(double)) == 0);
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> buf_;
};

inline Matrix transposed(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

// Compensated (Neumaier) summation. Probability rows must hit their
// normalization invariants at 1e-12 even for a few thousand entries, which
// plain left-to-right accumulation cannot promise.
inline double compensated_sum(const double* v, std::size_t n) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double t = s + v[i];
        if (std::abs(s) >= std::abs(v[i]))
            c += (s - t) + v[i];
        else
            c += (v[i] - t) + s;
        s = t;
    }
    return s + c;
}

} // namespace tsne
