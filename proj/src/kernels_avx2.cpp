#include "scbf/kernels.hpp"

#include <cmath>
#include <immintrin.h>

// AVX2+FMA variants of the inner loops. Tails are handled scalar; the
// 4-lane partial sums change summation order relative to the scalar
// kernels, so reductions agree to ~1e-14 relative, not bitwise.

namespace scbf {
namespace {

void axpy(double* y, const double* x, double a, std::size_t n) {
    std::size_t i = 0;
    __m256d va = _mm256_set1_pd(a);
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, vx, vy));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void vmul_inplace(double* y, const double* a, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d va = _mm256_loadu_pd(a + i);
        _mm256_storeu_pd(y + i, _mm256_mul_pd(vy, va));
    }
    for (; i < n; ++i) y[i] *= a[i];
}

void vmul(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void vmul_accum(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vo = _mm256_loadu_pd(out + i);
        vo = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), vo);
        _mm256_storeu_pd(out + i, vo);
    }
    for (; i < n; ++i) out[i] += a[i] * b[i];
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double sum_sq(const double* x, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double dot(const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_sum_sq(const double* w, const double* x, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), _mm256_loadu_pd(w + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * x[i] * x[i];
    return s;
}

void abs2_2(const double* x, const double* y, double* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(s + i, _mm256_fmadd_pd(vx, vx, _mm256_mul_pd(vy, vy)));
    }
    for (; i < n; ++i) s[i] = x[i] * x[i] + y[i] * y[i];
}

void abs2_3(const double* x, const double* y, const double* z, double* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vz = _mm256_loadu_pd(z + i);
        __m256d v = _mm256_fmadd_pd(vx, vx, _mm256_mul_pd(vy, vy));
        _mm256_storeu_pd(s + i, _mm256_fmadd_pd(vz, vz, v));
    }
    for (; i < n; ++i) s[i] = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
}

inline bool small_int_exponent(double e, int& ie) {
    ie = static_cast<int>(e);
    return static_cast<double>(ie) == e && ie >= 0 && ie <= 16;
}

inline __m256d pow_int(__m256d s, int e) {
    __m256d p = _mm256_set1_pd(1.0);
    __m256d base = s;
    while (e > 0) {
        if (e & 1) p = _mm256_mul_pd(p, base);
        base = _mm256_mul_pd(base, base);
        e >>= 1;
    }
    return p;
}

void pow_scale(const double* s, double e, const double* u, double* out, std::size_t n) {
    int ie;
    if (small_int_exponent(e, ie)) {
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            __m256d p = pow_int(_mm256_loadu_pd(s + i), ie);
            _mm256_storeu_pd(out + i, _mm256_mul_pd(p, _mm256_loadu_pd(u + i)));
        }
        for (; i < n; ++i) {
            double p = 1.0, b = s[i];
            int k = ie;
            while (k > 0) {
                if (k & 1) p *= b;
                b *= b;
                k >>= 1;
            }
            out[i] = p * u[i];
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(s[i], e) * u[i];
    }
}

double pow_sum(const double* s, double e, std::size_t n) {
    int ie;
    double acc;
    if (small_int_exponent(e, ie)) {
        std::size_t i = 0;
        __m256d vacc = _mm256_setzero_pd();
        for (; i + 4 <= n; i += 4) {
            vacc = _mm256_add_pd(vacc, pow_int(_mm256_loadu_pd(s + i), ie));
        }
        acc = hsum(vacc);
        for (; i < n; ++i) {
            double p = 1.0, b = s[i];
            int k = ie;
            while (k > 0) {
                if (k & 1) p *= b;
                b *= b;
                k >>= 1;
            }
            acc += p;
        }
    } else {
        acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += std::pow(s[i], e);
    }
    return acc;
}

}  // namespace

const Kernels* avx2_kernels() {
    if (!(__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))) return nullptr;
    static const Kernels k = {
        "avx2",  axpy,   vmul_inplace, vmul,      vmul_accum, sum_sq,
        dot,     weighted_sum_sq, abs2_2, abs2_3, pow_scale,  pow_sum,
    };
    return &k;
}

}  // namespace scbf
