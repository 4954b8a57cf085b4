#pragma once

#include <cstddef>

namespace tsne::simd {

// Table of the hot inner-loop primitives. Every entry has a scalar reference
// implementation and, on x86-64, an AVX2+FMA twin; the two are equivalence-
// tested against each other. Transcendental loops (exp, pow, log) are not in
// the table — those stay scalar at the call sites.
struct Kernels {
    const char* name;

    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*sum)(const double* v, std::size_t n);
    double (*max_abs)(const double* v, std::size_t n); // 0 for n == 0
    double (*squared_distance)(const double* a, const double* b, std::size_t n);

    void (*axpy)(double alpha, const double* x, double* y, std::size_t n); // y += alpha*x
    void (*scale)(const double* x, double alpha, double* out, std::size_t n);
    void (*diff)(const double* a, const double* b, double* out, std::size_t n);
    // out = (a - b) * w
    void (*diff_times)(const double* a, const double* b, const double* w, double* out,
                       std::size_t n);
    // out = 1 / (1 + s*x)
    void (*inv_one_plus_scaled)(const double* x, double s, double* out, std::size_t n);
};

const Kernels& scalar_kernels();
const Kernels& avx2_kernels(); // only valid when avx2_available()

bool avx2_compiled();
bool avx2_available(); // compiled in and supported by this CPU

// Runtime-selected table. First use honors the TSNE_SIMD environment variable
// ("scalar", "avx2", or "auto"); defaults to the best available path.
const Kernels& active();

// Test hooks.
void select(const Kernels& k);
void select_auto();

} // namespace tsne::simd
