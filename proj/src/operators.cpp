#include "scbf/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "scbf/kernels.hpp"

namespace scbf {
namespace {

constexpr double kQuadBestEffort = 4.0;

bool odd_integer(double r) {
    double rr = std::round(r);
    return std::abs(r - rr) < 1e-12 && (static_cast<long>(rr) % 2 == 1);
}

// physical samples of every derivative field d_i u_j on an m^dim grid
std::vector<std::vector<double>> gradient_samples(const SpectralField& u, int grid_n) {
    const SpectralSpace& sp = u.space();
    const int d = sp.dim();
    const int nm = sp.n_retained();
    std::size_t pts = 1;
    for (int i = 0; i < d; ++i) pts *= static_cast<std::size_t>(grid_n);
    std::vector<std::vector<double>> grad(static_cast<std::size_t>(d) * d,
                                          std::vector<double>(pts));
    std::vector<std::complex<double>> dcoef(nm);
    for (int j = 0; j < d; ++j) {       // component
        for (int i = 0; i < d; ++i) {   // derivative direction
            for (int m = 0; m < nm; ++m) {
                dcoef[m] = std::complex<double>(0.0, sp.mode(m)[i]) * u.at(j, m);
            }
            scalar_to_physical(sp, dcoef.data(), grid_n, grad[static_cast<std::size_t>(i) * d + j].data());
        }
    }
    return grad;
}

}  // namespace

void PhysicsParams::validate() const {
    if (!(mu > 0.0)) throw std::invalid_argument("PhysicsParams: mu must be > 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("PhysicsParams: beta must be >= 0");
    if (!(r >= 1.0)) throw std::invalid_argument("PhysicsParams: r must be >= 1");
}

SpectralField stokes_apply(const SpectralField& u) { return stokes_power_apply(u, 1.0); }

SpectralField stokes_power_apply(const SpectralField& u, double s) {
    SpectralField out = u;
    const SpectralSpace& sp = u.space();
    const int nm = sp.n_retained();
    for (int m = 0; m < nm; ++m) {
        double f = std::pow(sp.lambda(m), s);
        for (int c = 0; c < sp.dim(); ++c) out.at(c, m) *= f;
    }
    return out;
}

SpectralField leray_project(const SpectralField& v) {
    SpectralField out = v;
    out.project_divergence_free();
    return out;
}

SpectralField smoothing_projection(const SpectralField& u, double n) {
    if (!(n > 0.0)) throw std::invalid_argument("smoothing_projection: n must be > 0");
    SpectralField out = u;
    const SpectralSpace& sp = u.space();
    const double n2 = n * n;
    for (int m = 0; m < sp.n_retained(); ++m) {
        double l = sp.lambda(m);
        double f = (l < n2) ? std::exp(-l / n) : 0.0;
        for (int c = 0; c < sp.dim(); ++c) out.at(c, m) *= f;
    }
    return out;
}

double trilinear_b(const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    const SpectralSpace& sp = u.space();
    if (!sp.same_as(v.space()) || !sp.same_as(w.space()))
        throw std::invalid_argument("trilinear_b: space mismatch");
    const int d = sp.dim();
    // cubic integrand: exact at 3/2 padding for the Nyquist-free mode set
    const int m = sp.grid_size(1.5);
    PhysicalField up = to_physical(u, 1.5);
    PhysicalField wp = to_physical(w, 1.5);
    auto grad_v = gradient_samples(v, m);
    const std::size_t pts = up.points();
    const Kernels& K = kernels();
    std::vector<double> conv(pts, 0.0);
    std::vector<double> acc(pts);
    double total = 0.0;
    for (int j = 0; j < d; ++j) {
        std::fill(conv.begin(), conv.end(), 0.0);
        for (int i = 0; i < d; ++i) {
            K.vmul_accum(conv.data(), up.component(i),
                         grad_v[static_cast<std::size_t>(i) * d + j].data(), pts);
        }
        K.vmul(acc.data(), conv.data(), wp.component(j), pts);
        for (std::size_t x = 0; x < pts; ++x) total += acc[x];
    }
    return total * up.quadrature_weight();
}

SpectralField convective_B(const SpectralField& u, const SpectralField& v) {
    const SpectralSpace& sp = u.space();
    if (!sp.same_as(v.space())) throw std::invalid_argument("convective_B: space mismatch");
    const int d = sp.dim();
    const int nm = sp.n_retained();
    const double pad = sp.padding_factor();  // 3/2 rule: exact for quadratics
    const int gn = sp.grid_size(pad);
    PhysicalField up = to_physical(u, pad);
    const bool same = (&u == &v);
    PhysicalField vp;
    if (!same) vp = to_physical(v, pad);
    const PhysicalField& vref = same ? up : vp;
    const std::size_t pts = up.points();
    const Kernels& K = kernels();

    // divergence form: B_j = sum_i d_i (u_i v_j); needs the d^2 products
    std::vector<double> prod(pts);
    std::vector<std::complex<double>> phat(nm);
    SpectralField out(u.space_ptr());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (same && j < i) continue;  // u_i u_j symmetric
            K.vmul(prod.data(), up.component(i), vref.component(j), pts);
            scalar_to_spectral(sp, prod.data(), gn, phat.data());
            for (int m = 0; m < nm; ++m) {
                std::complex<double> der =
                    std::complex<double>(0.0, sp.mode(m)[i]) * phat[m];
                out.at(j, m) += der;
                if (same && j > i) {
                    out.at(i, m) += std::complex<double>(0.0, sp.mode(m)[j]) * phat[m];
                }
            }
        }
    }
    out.project_divergence_free();
    out.enforce_hermitian();
    return out;
}

double forchheimer_padding(double r) {
    if (std::abs(r - 1.0) < 1e-12) return 1.0;  // C(u) = u, no product
    if (odd_integer(r)) return (r + 1.0) / 2.0;
    return kQuadBestEffort;
}

SpectralField forchheimer_C(const SpectralField& u, double r) {
    NonlinearEval ev = eval_nonlinear(u, r);
    return std::move(ev.C);
}

NonlinearEval eval_nonlinear(const SpectralField& u, double r) {
    if (!(r >= 1.0)) throw std::invalid_argument("forchheimer_C: r must be >= 1");
    const SpectralSpace& sp = u.space();
    const int d = sp.dim();
    const int nm = sp.n_retained();
    NonlinearEval ev;
    ev.B = convective_B(u, u);

    const double pad = std::max(forchheimer_padding(r), sp.padding_factor());
    const int gn = sp.grid_size(pad);
    PhysicalField up = to_physical(u, pad);
    const std::size_t pts = up.points();
    const Kernels& K = kernels();

    std::vector<double> s = pointwise_abs2(up);
    ev.lr1_integral = K.pow_sum(s.data(), (r + 1.0) / 2.0, pts) * up.quadrature_weight();

    ev.C = SpectralField(u.space_ptr());
    std::vector<double> cphys(pts);
    std::vector<std::complex<double>> chat(nm);
    for (int c = 0; c < d; ++c) {
        K.pow_scale(s.data(), (r - 1.0) / 2.0, up.component(c), cphys.data(), pts);
        scalar_to_spectral(sp, cphys.data(), gn, chat.data());
        for (int m = 0; m < nm; ++m) ev.C.at(c, m) = chat[m];
    }
    ev.C.project_divergence_free();
    ev.C.enforce_hermitian();
    return ev;
}

SpectralField combined_G(const SpectralField& u, const PhysicsParams& p) {
    NonlinearEval ev = eval_nonlinear(u, p.r);
    SpectralField g = stokes_apply(u);
    g.scale(p.mu);
    g.axpy(1.0, ev.B);
    g.axpy(p.beta, ev.C);
    return g;
}

double eta_constant(const PhysicsParams& p) {
    p.validate();
    if (!(p.beta > 0.0))
        throw std::domain_error("eta_constant: beta must be > 0 (the shift divides by beta)");
    if (p.r > 3.0) {
        return (p.r - 3.0) / (2.0 * p.mu * (p.r - 1.0)) *
               std::pow(2.0 / (p.beta * p.mu * (p.r - 1.0)), 2.0 / (p.r - 3.0));
    }
    if (std::abs(p.r - 3.0) < 1e-12) {
        if (p.critical_coupling_ok()) return 0.0;
        throw std::domain_error("eta_constant: r = 3 requires 2*beta*mu >= 1");
    }
    throw std::domain_error("eta_constant: no monotonicity constant for r < 3");
}

MonotonicityReport monotonicity_gap(const SpectralField& u, const SpectralField& v,
                                    const PhysicsParams& p) {
    double eta = eta_constant(p);  // validates the parameter regime
    SpectralField du = u - v;
    SpectralField dg = combined_G(u, p) - combined_G(v, p);
    MonotonicityReport rep;
    rep.inner = inner_h(dg, du);
    double dv2 = v_norm_sq(du);
    if (p.r > 3.0) {
        rep.eta_term = eta * h_norm_sq(du);
        rep.v_term = 0.5 * p.mu * dv2;
        rep.gap = rep.inner + rep.eta_term - rep.v_term;
    } else {
        rep.gap = rep.inner;
    }
    rep.scale = std::abs(rep.inner) + rep.eta_term + rep.v_term + dv2;
    return rep;
}

BoundPair b_operator_bound_check(const SpectralField& u, const SpectralField& v, double r) {
    SpectralField b = convective_B(u, v);
    BoundPair out;
    out.lhs = std::sqrt(a_power_norm_sq(b, -0.5));
    out.rhs = lp_norm(u, r + 1.0) * lp_norm(v, 2.0 * (r + 1.0) / (r - 1.0));
    return out;
}

BoundPair b_self_bound_check(const SpectralField& u, double r) {
    if (!(r > 3.0)) throw std::invalid_argument("b_self_bound_check: needs r > 3");
    SpectralField b = convective_B(u, u);
    BoundPair out;
    out.lhs = std::sqrt(a_power_norm_sq(b, -0.5));
    out.rhs = std::pow(lp_norm(u, r + 1.0), (r + 1.0) / (r - 1.0)) *
              std::pow(std::sqrt(h_norm_sq(u)), (r - 3.0) / (r - 1.0));
    return out;
}

BoundPair lipschitz_check_C(const SpectralField& u, const SpectralField& v, double r) {
    const SpectralSpace& sp = u.space();
    const int d = sp.dim();
    PhysicalField up = to_physical(u, kQuadBestEffort);
    PhysicalField vp = to_physical(v, kQuadBestEffort);
    const std::size_t pts = up.points();
    std::vector<double> su = pointwise_abs2(up);
    std::vector<double> sv = pointwise_abs2(vp);
    const double e = (r - 1.0) / 2.0;
    const double q = (r + 1.0) / r;
    double acc = 0.0;
    for (std::size_t x = 0; x < pts; ++x) {
        double fu = std::pow(su[x], e);
        double fv = std::pow(sv[x], e);
        double diff2 = 0.0;
        for (int c = 0; c < d; ++c) {
            double g = fu * up.component(c)[x] - fv * vp.component(c)[x];
            diff2 += g * g;
        }
        acc += std::pow(diff2, 0.5 * q);
    }
    BoundPair out;
    out.lhs = std::pow(acc * up.quadrature_weight(), 1.0 / q);
    out.rhs = r * std::pow(lp_norm(u, r + 1.0) + lp_norm(v, r + 1.0), r - 1.0) *
              lp_norm(u - v, r + 1.0);
    return out;
}

RegularityTriple periodic_regularity_bounds(const SpectralField& u, double r) {
    const SpectralSpace& sp = u.space();
    const int d = sp.dim();
    const double pad = std::max(forchheimer_padding(r), 2.0);
    const int gn = sp.grid_size(pad);
    PhysicalField up = to_physical(u, pad);
    PhysicalField aup = to_physical(stokes_apply(u), pad);
    auto grad = gradient_samples(u, gn);
    const std::size_t pts = up.points();
    std::vector<double> s = pointwise_abs2(up);
    const double e = (r - 1.0) / 2.0;
    double i1 = 0.0, i2 = 0.0;
    for (std::size_t x = 0; x < pts; ++x) {
        double g2 = 0.0;
        for (std::size_t ij = 0; ij < grad.size(); ++ij) g2 += grad[ij][x] * grad[ij][x];
        double w = std::pow(s[x], e);
        double ua = 0.0;
        for (int c = 0; c < d; ++c) ua += up.component(c)[x] * aup.component(c)[x];
        i1 += g2 * w;
        i2 += w * ua;
    }
    RegularityTriple t;
    t.i1 = i1 * up.quadrature_weight();
    t.i2 = i2 * up.quadrature_weight();
    t.i3 = r * t.i1;
    return t;
}

BoundPair c_monotone_bound(const SpectralField& u, const SpectralField& v, double r) {
    const SpectralSpace& sp = u.space();
    const int d = sp.dim();
    const double pad = std::max(forchheimer_padding(r), sp.padding_factor());
    PhysicalField up = to_physical(u, pad);
    PhysicalField vp = to_physical(v, pad);
    const std::size_t pts = up.points();
    std::vector<double> su = pointwise_abs2(up);
    std::vector<double> sv = pointwise_abs2(vp);
    const double e = (r - 1.0) / 2.0;
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t x = 0; x < pts; ++x) {
        double fu = std::pow(su[x], e);
        double fv = std::pow(sv[x], e);
        double dot = 0.0, diff2 = 0.0;
        for (int c = 0; c < d; ++c) {
            double uu = up.component(c)[x], vv = vp.component(c)[x];
            double w = uu - vv;
            dot += (fu * uu - fv * vv) * w;
            diff2 += w * w;
        }
        lhs += dot;
        rhs += 0.5 * (fu + fv) * diff2;
    }
    BoundPair out;
    out.lhs = lhs * up.quadrature_weight();
    out.rhs = rhs * up.quadrature_weight();
    return out;
}

}  // namespace scbf
