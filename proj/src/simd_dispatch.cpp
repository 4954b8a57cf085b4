// Runtime kernel selection. The choice is made once per process (or forced
// through select()/TSNE_SIMD), so a given binary on a given machine always
// runs the same code path — reruns stay bit-identical.

#include <cstdlib>
#include <cstring>

#include "tsne/simd.hpp"

namespace tsne::simd {
namespace {

const Kernels* forced = nullptr;

const Kernels& detect() {
    if (const char* env = std::getenv("TSNE_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return scalar_kernels();
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return avx2_kernels();
    }
    return avx2_available() ? avx2_kernels() : scalar_kernels();
}

} // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return avx2_compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Kernels& active() {
    if (forced) return *forced;
    static const Kernels& chosen = detect();
    return chosen;
}

void select(const Kernels& k) { forced = &k; }
void select_auto() { forced = nullptr; }

} // namespace tsne::simd
