#pragma once

#include <cstddef>

namespace scbf {

// Data-parallel inner loops of the spectral core. Every entry has a scalar
// reference implementation; SIMD backends (AVX2 on x86-64, NEON on aarch64)
// are selected at runtime and must agree with the scalar kernels to
// round-off (see tests/test_kernels.cpp).
//
// Complex arrays are passed as interleaved doubles (re,im,...), so a field
// of n modes is a plain array of 2n doubles. Per-mode real factors (heat
// multipliers, eigenvalues) are pre-duplicated into tables of the same
// length.
struct Kernels {
    const char* name;

    // y += a*x
    void (*axpy)(double* y, const double* x, double a, std::size_t n);
    // y *= a (elementwise)
    void (*vmul_inplace)(double* y, const double* a, std::size_t n);
    // out = a*b
    void (*vmul)(double* out, const double* a, const double* b, std::size_t n);
    // out += a*b
    void (*vmul_accum)(double* out, const double* a, const double* b, std::size_t n);
    // sum x_i^2
    double (*sum_sq)(const double* x, std::size_t n);
    // sum a_i b_i
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum w_i x_i^2
    double (*weighted_sum_sq)(const double* w, const double* x, std::size_t n);
    // s_i = x_i^2 + y_i^2
    void (*abs2_2)(const double* x, const double* y, double* s, std::size_t n);
    // s_i = x_i^2 + y_i^2 + z_i^2
    void (*abs2_3)(const double* x, const double* y, const double* z, double* s, std::size_t n);
    // out_i = s_i^e * u_i   (s_i >= 0)
    void (*pow_scale)(const double* s, double e, const double* u, double* out, std::size_t n);
    // sum s_i^e          (s_i >= 0)
    double (*pow_sum)(const double* s, double e, std::size_t n);
};

const Kernels& scalar_kernels();
#if defined(SCBF_BUILD_AVX2)
const Kernels* avx2_kernels();  // nullptr when the CPU lacks AVX2+FMA
#endif
#if defined(SCBF_BUILD_NEON)
const Kernels* neon_kernels();
#endif

// Runtime-selected backend. Honors SCBF_KERNELS=scalar|avx2|neon once at
// first use; unknown or unavailable names fall back to scalar.
const Kernels& kernels();

// Test hook: override the active backend ("" restores auto-selection).
void force_kernels(const char* name);

}  // namespace scbf
