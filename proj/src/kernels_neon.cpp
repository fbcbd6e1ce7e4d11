#include "scbf/kernels.hpp"

#include <cmath>
#include <arm_neon.h>

// NEON (aarch64) variants. Two lanes per vector; same tail/accumulation
// conventions as the AVX2 backend.

namespace scbf {
namespace {

void axpy(double* y, const double* x, double a, std::size_t n) {
    std::size_t i = 0;
    float64x2_t va = vdupq_n_f64(a);
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void vmul_inplace(double* y, const double* a, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vmulq_f64(vld1q_f64(y + i), vld1q_f64(a + i)));
    }
    for (; i < n; ++i) y[i] *= a[i];
}

void vmul(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void vmul_accum(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(out + i, vfmaq_f64(vld1q_f64(out + i), vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    for (; i < n; ++i) out[i] += a[i] * b[i];
}

double sum_sq(const double* x, std::size_t n) {
    std::size_t i = 0;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(x + i);
        acc = vfmaq_f64(acc, v, v);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double dot(const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_sum_sq(const double* w, const double* x, std::size_t n) {
    std::size_t i = 0;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(x + i);
        acc = vfmaq_f64(acc, vmulq_f64(v, v), vld1q_f64(w + i));
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += w[i] * x[i] * x[i];
    return s;
}

void abs2_2(const double* x, const double* y, double* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vx = vld1q_f64(x + i);
        float64x2_t vy = vld1q_f64(y + i);
        vst1q_f64(s + i, vfmaq_f64(vmulq_f64(vy, vy), vx, vx));
    }
    for (; i < n; ++i) s[i] = x[i] * x[i] + y[i] * y[i];
}

void abs2_3(const double* x, const double* y, const double* z, double* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vx = vld1q_f64(x + i);
        float64x2_t vy = vld1q_f64(y + i);
        float64x2_t vz = vld1q_f64(z + i);
        float64x2_t v = vfmaq_f64(vmulq_f64(vy, vy), vx, vx);
        vst1q_f64(s + i, vfmaq_f64(v, vz, vz));
    }
    for (; i < n; ++i) s[i] = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
}

inline double pow_nonneg(double s, double e) {
    int ie = static_cast<int>(e);
    if (static_cast<double>(ie) == e && ie >= 0 && ie <= 16) {
        double p = 1.0, base = s;
        int k = ie;
        while (k > 0) {
            if (k & 1) p *= base;
            base *= base;
            k >>= 1;
        }
        return p;
    }
    return std::pow(s, e);
}

void pow_scale(const double* s, double e, const double* u, double* out, std::size_t n) {
    int ie = static_cast<int>(e);
    if (static_cast<double>(ie) == e && ie >= 0 && ie <= 16) {
        std::size_t i = 0;
        for (; i + 2 <= n; i += 2) {
            float64x2_t p = vdupq_n_f64(1.0);
            float64x2_t base = vld1q_f64(s + i);
            int k = ie;
            while (k > 0) {
                if (k & 1) p = vmulq_f64(p, base);
                base = vmulq_f64(base, base);
                k >>= 1;
            }
            vst1q_f64(out + i, vmulq_f64(p, vld1q_f64(u + i)));
        }
        for (; i < n; ++i) out[i] = pow_nonneg(s[i], e) * u[i];
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(s[i], e) * u[i];
    }
}

double pow_sum(const double* s, double e, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += pow_nonneg(s[i], e);
    return acc;
}

}  // namespace

const Kernels* neon_kernels() {
    static const Kernels k = {
        "neon",  axpy,   vmul_inplace, vmul,      vmul_accum, sum_sq,
        dot,     weighted_sum_sq, abs2_2, abs2_3, pow_scale,  pow_sum,
    };
    return &k;
}

}  // namespace scbf
