// kernels_dispatch.cpp — runtime backend selection
#include "decoq/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace decoq::kern {

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Kernels& active() {
    static const Kernels& chosen = []() -> const Kernels& {
        const char* force = std::getenv("DECOQ_KERNEL");
        if (force != nullptr && std::strcmp(force, "scalar") == 0) return scalar_kernels();
        if (avx2_available()) return avx2_kernels();
        return scalar_kernels();
    }();
    return chosen;
}

} // namespace decoq::kern
