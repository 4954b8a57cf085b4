// Scalar reference kernels. These define the semantics; the vector paths in
// simd_avx2.cpp must agree with them up to summation order.

#include <cmath>

#include "tsne/simd.hpp"

namespace tsne::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_scalar(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
}

double max_abs_scalar(const double* v, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::abs(v[i]);
        if (a > m) m = a;
    }
    return m;
}

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(const double* x, double alpha, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i];
}

void diff_scalar(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void diff_times_scalar(const double* a, const double* b, const double* w, double* out,
                       std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (a[i] - b[i]) * w[i];
}

void inv_one_plus_scaled_scalar(const double* x, double s, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / (1.0 + s * x[i]);
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k = {
        "scalar",
        dot_scalar,
        sum_scalar,
        max_abs_scalar,
        squared_distance_scalar,
        axpy_scalar,
        scale_scalar,
        diff_scalar,
        diff_times_scalar,
        inv_one_plus_scaled_scalar,
    };
    return k;
}

} // namespace tsne::simd
