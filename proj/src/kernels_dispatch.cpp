#include "scbf/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace scbf {
namespace {

const Kernels* g_forced = nullptr;

const Kernels* select(const char* name) {
    if (name && std::strcmp(name, "scalar") == 0) return &scalar_kernels();
#if defined(SCBF_BUILD_AVX2)
    if (name && std::strcmp(name, "avx2") == 0) return avx2_kernels();
#endif
#if defined(SCBF_BUILD_NEON)
    if (name && std::strcmp(name, "neon") == 0) return neon_kernels();
#endif
    return nullptr;
}

const Kernels* autodetect() {
    if (const char* env = std::getenv("SCBF_KERNELS")) {
        if (const Kernels* k = select(env)) return k;
    }
#if defined(SCBF_BUILD_AVX2)
    if (const Kernels* k = avx2_kernels()) return k;
#endif
#if defined(SCBF_BUILD_NEON)
    if (const Kernels* k = neon_kernels()) return k;
#endif
    return &scalar_kernels();
}

}  // namespace

const Kernels& kernels() {
    if (g_forced) return *g_forced;
    static const Kernels* chosen = autodetect();
    return *chosen;
}

void force_kernels(const char* name) {
    if (!name || !*name) {
        g_forced = nullptr;
        return;
    }
    g_forced = select(name);
}

}  // namespace scbf
