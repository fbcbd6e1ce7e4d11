#include "scbf/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "scbf/kernels.hpp"

namespace scbf {
namespace {

// duplicated per-double weight table (re,im share the mode weight)
std::vector<double> weight_table(const SpectralField& u, double s) {
    const SpectralSpace& sp = u.space();
    const int nm = sp.n_retained();
    std::vector<double> w(static_cast<std::size_t>(2) * sp.dim() * nm);
    for (int m = 0; m < nm; ++m) {
        double lw = std::pow(sp.lambda(m), 2.0 * s);
        for (int c = 0; c < sp.dim(); ++c) {
            w[2 * (static_cast<std::size_t>(c) * nm + m)] = lw;
            w[2 * (static_cast<std::size_t>(c) * nm + m) + 1] = lw;
        }
    }
    return w;
}

}  // namespace

double h_norm_sq(const SpectralField& u) {
    return u.space().cell_volume() * kernels().sum_sq(u.raw(), u.raw_size());
}

double v_norm_sq(const SpectralField& u) { return a_power_norm_sq(u, 0.5); }

double a_power_norm_sq(const SpectralField& u, double s) {
    auto w = weight_table(u, s);
    return u.space().cell_volume() * kernels().weighted_sum_sq(w.data(), u.raw(), u.raw_size());
}

double lp_quadrature_padding(const SpectralSpace& space, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    double rounded = std::round(p);
    bool even_int = std::abs(p - rounded) < 1e-12 && (static_cast<long>(rounded) % 2 == 0);
    if (even_int) {
        double pad = std::ceil(rounded / 2.0);
        return pad < space.padding_factor() ? space.padding_factor() : pad;
    }
    return 4.0;
}

std::vector<double> pointwise_abs2(const PhysicalField& ph) {
    std::vector<double> s(ph.points());
    if (ph.space->dim() == 2) {
        kernels().abs2_2(ph.component(0), ph.component(1), s.data(), s.size());
    } else {
        kernels().abs2_3(ph.component(0), ph.component(1), ph.component(2), s.data(), s.size());
    }
    return s;
}

double lp_integral(const SpectralField& u, double p) {
    double pad = lp_quadrature_padding(u.space(), p);
    PhysicalField ph = to_physical(u, pad);
    std::vector<double> s = pointwise_abs2(ph);
    double sum = kernels().pow_sum(s.data(), p / 2.0, s.size());
    return sum * ph.quadrature_weight();
}

double lp_norm(const SpectralField& u, double p) {
    return std::pow(lp_integral(u, p), 1.0 / p);
}

}  // namespace scbf
