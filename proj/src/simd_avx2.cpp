// AVX2 + FMA kernels. This translation unit is the only one compiled with
// -mavx2 -mfma; callers must check avx2_available() before taking this table.

#include "tsne/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace tsne::simd {
namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    // Handle remainder with scalar code
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_avx2(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += v[i];
    return s;
}

double max_abs_avx2(const double* v, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(v + i)));
    double buf[4];
    _mm256_storeu_pd(buf, acc);
    double m = buf[0];
    for (int l = 1; l < 4; ++l)
        if (buf[l] > m) m = buf[l];
    for (; i < n; ++i) {
        double a = std::abs(v[i]);
        if (a > m) m = a;
    }
    return m;
}

double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                                _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(const double* x, double alpha, double* out, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = alpha * x[i];
}

void diff_avx2(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i,
                         _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] - b[i];
}

void diff_times_avx2(const double* a, const double* b, const double* w, double* out,
                     std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(d, _mm256_loadu_pd(w + i)));
    }
    for (; i < n; ++i) out[i] = (a[i] - b[i]) * w[i];
}

void inv_one_plus_scaled_avx2(const double* x, double s, double* out, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d denom = _mm256_fmadd_pd(vs, _mm256_loadu_pd(x + i), one);
        _mm256_storeu_pd(out + i, _mm256_div_pd(one, denom));
    }
    for (; i < n; ++i) out[i] = 1.0 / (1.0 + s * x[i]);
}

} // namespace

const Kernels& avx2_kernels() {
    static const Kernels k = {
        "avx2",
        dot_avx2,
        sum_avx2,
        max_abs_avx2,
        squared_distance_avx2,
        axpy_avx2,
        scale_avx2,
        diff_avx2,
        diff_times_avx2,
        inv_one_plus_scaled_avx2,
    };
    return k;
}

bool avx2_compiled() { return true; }

} // namespace tsne::simd

#else // non-x86 build: no AVX2 table, dispatch falls back to scalar

namespace tsne::simd {

const Kernels& avx2_kernels() { return scalar_kernels(); }
bool avx2_compiled() { return false; }

} // namespace tsne::simd

#endif
