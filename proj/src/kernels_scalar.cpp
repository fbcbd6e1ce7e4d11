#include "scbf/kernels.hpp"

#include <cmath>

namespace scbf {
namespace {

void axpy(double* y, const double* x, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void vmul_inplace(double* y, const double* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= a[i];
}

void vmul(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void vmul_accum(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

double sum_sq(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_sum_sq(const double* w, const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * x[i] * x[i];
    return s;
}

void abs2_2(const double* x, const double* y, double* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) s[i] = x[i] * x[i] + y[i] * y[i];
}

void abs2_3(const double* x, const double* y, const double* z, double* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) s[i] = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
}

// s^e with exact repeated multiplication when e is a small nonnegative
// integer (the dealiased absorption exponents land here), pow otherwise.
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
    for (std::size_t i = 0; i < n; ++i) out[i] = pow_nonneg(s[i], e) * u[i];
}

double pow_sum(const double* s, double e, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += pow_nonneg(s[i], e);
    return acc;
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k = {
        "scalar", axpy,   vmul_inplace, vmul,      vmul_accum, sum_sq,
        dot,      weighted_sum_sq, abs2_2, abs2_3, pow_scale,  pow_sum,
    };
    return k;
}

}  // namespace scbf
