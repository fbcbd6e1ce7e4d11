#include "scbf/battery.hpp"

#include <cmath>
#include <functional>

#include "scbf/noise.hpp"
#include "scbf/operators.hpp"
#include "scbf/oracles.hpp"

namespace scbf {
namespace {

constexpr double kStructuralTol = 1e-11;  // structural identities, relative
constexpr double kInequalityTol = 1e-9;   // inequality slack on the dominant term
constexpr double kOracleTol = 1e-10;      // pseudo-spectral vs brute force

struct Ctx {
    std::uint64_t seed;
    int trials;
    SpacePtr s16;      // dim 2, 16^2
    SpacePtr s8;       // dim 2, 8^2
    SpacePtr s8_3d;    // dim 3, 8^3
};

SpectralField rnd(const SpacePtr& sp, std::uint64_t seed, std::uint32_t tag, double amp = 1.0,
                  double decay = 3.0) {
    RandomFieldLaw law;
    law.decay = decay;
    law.amplitude = amp;
    law.seed = seed;
    return random_field(sp, law, tag);
}

double rel(double dev, double scale) { return dev / std::max(scale, 1e-300); }

using CheckFn = std::function<OracleReport(const Ctx&)>;

struct Entry {
    const char* name;
    CheckFn fn;
};

OracleReport sweep(const Ctx& c, const char* name, double tol, int trials,
                   const std::function<double(int)>& scaled_dev) {
    OracleReport r;
    r.name = name;
    r.seed = c.seed;
    r.trials = trials;
    r.tolerance = tol;
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) worst = std::max(worst, scaled_dev(i));
    r.max_deviation = worst;
    r.pass = worst <= tol;
    return r;
}

SpectralField truncate_modes(const SpectralField& u, double kcut) {
    SpectralField out = u;
    const SpectralSpace& sp = u.space();
    for (int m = 0; m < sp.n_retained(); ++m) {
        if (sp.lambda(m) > kcut * kcut)
            for (int ccomp = 0; ccomp < sp.dim(); ++ccomp) out.at(ccomp, m) = 0.0;
    }
    return out;
}

// ---------------------------------------------------------------- checks

OracleReport chk_leray_idempotent(const Ctx& c) {
    return sweep(c, "leray_idempotent", kStructuralTol, c.trials, [&](int i) {
        SpectralField v = rnd(c.s16, c.seed, 100 + i);
        // undo the constructor's built-in solenoidality: add a gradient part
        SpectralField raw = v;
        for (int m = 0; m < c.s16->n_retained(); ++m) {
            const auto& k = c.s16->mode(m);
            std::complex<double> g(0.3 / (1.0 + c.s16->lambda(m)), 0.1);
            for (int cc = 0; cc < 2; ++cc) raw.at(cc, m) += g * double(k[cc]);
        }
        raw.enforce_hermitian();
        SpectralField p1 = leray_project(raw);
        SpectralField p2 = leray_project(p1);
        return rel(std::sqrt(h_norm_sq(p2 - p1)), std::sqrt(h_norm_sq(p1)));
    });
}

OracleReport chk_leray_gradient_kernel(const Ctx& c) {
    return sweep(c, "leray_gradient_kernel", kStructuralTol, c.trials, [&](int i) {
        SpectralField g(c.s16);
        GaussianStream gs(c.seed, 200 + i, StreamPurpose::Battery);
        int mi = 0;
        for (int m : c.s16->pair_representatives()) {
            const auto& k = c.s16->mode(m);
            std::complex<double> a(gs.normal(0, 2 * mi), gs.normal(0, 2 * mi + 1));
            ++mi;
            int mc = c.s16->conj_index(m);
            for (int cc = 0; cc < 2; ++cc) {
                g.at(cc, m) += a * double(k[cc]);
                g.at(cc, mc) += std::conj(a) * double(k[cc]);
            }
        }
        SpectralField pg = leray_project(g);
        return rel(std::sqrt(h_norm_sq(pg)), std::sqrt(h_norm_sq(g)));
    });
}

OracleReport chk_leray_oracle(const Ctx& c) {
    return sweep(c, "leray_oracle_equiv", kOracleTol, c.trials, [&](int i) {
        SpectralField v = rnd(c.s8, c.seed, 300 + i);
        for (int m = 0; m < c.s8->n_retained(); ++m) {
            const auto& k = c.s8->mode(m);
            for (int cc = 0; cc < 2; ++cc) v.at(cc, m) += 0.2 * double(k[cc]);
        }
        v.enforce_hermitian();
        SpectralField a = leray_project(v);
        SpectralField b = leray_oracle(v);
        return rel(std::sqrt(h_norm_sq(a - b)), std::sqrt(h_norm_sq(a)));
    });
}

OracleReport chk_stokes_parseval(const Ctx& c) {
    return sweep(c, "stokes_parseval", 1e-12, c.trials, [&](int i) {
        SpectralField u = rnd(c.s16, c.seed, 400 + i);
        double lhs = inner_h(stokes_apply(u), u);
        // collocation quadrature of |grad u|^2
        const int gn = c.s16->grid_size(1.5);
        double quad = 0.0;
        std::vector<std::complex<double>> dcoef(c.s16->n_retained());
        std::vector<double> samp(static_cast<std::size_t>(gn) * gn);
        for (int j = 0; j < 2; ++j)
            for (int di = 0; di < 2; ++di) {
                for (int m = 0; m < c.s16->n_retained(); ++m)
                    dcoef[m] = std::complex<double>(0.0, c.s16->mode(m)[di]) * u.at(j, m);
                scalar_to_physical(*c.s16, dcoef.data(), gn, samp.data());
                for (double v : samp) quad += v * v;
            }
        quad *= std::pow(c.s16->domain_length() / gn, 2);
        return rel(std::abs(lhs - quad), std::abs(lhs));
    });
}

OracleReport chk_stokes_leray_commute(const Ctx& c) {
    return sweep(c, "stokes_leray_commute", kStructuralTol, c.trials, [&](int i) {
        SpectralField v = rnd(c.s16, c.seed, 500 + i);
        for (int m = 0; m < c.s16->n_retained(); ++m)
            for (int cc = 0; cc < 2; ++cc)
                v.at(cc, m) += std::complex<double>(0.05 * c.s16->mode(m)[cc], 0.0);
        v.enforce_hermitian();
        SpectralField a = stokes_apply(leray_project(v));
        SpectralField b = leray_project(stokes_apply(v));
        return rel(std::sqrt(h_norm_sq(a - b)), std::sqrt(h_norm_sq(a)));
    });
}

OracleReport chk_smoothing_contraction(const Ctx& c) {
    return sweep(c, "smoothing_contraction", 0.0, c.trials, [&](int i) {
        SpectralField u = rnd(c.s16, c.seed, 600 + i);
        double n = 0.5 + 0.13 * i;
        SpectralField pu = smoothing_projection(u, n);
        double dh = h_norm_sq(pu) - h_norm_sq(u);
        double dv = v_norm_sq(pu) - v_norm_sq(u);
        return rel(std::max(dh, 0.0), h_norm_sq(u)) + rel(std::max(dv, 0.0), v_norm_sq(u));
    });
}

OracleReport chk_smoothing_limit(const Ctx& c) {
    return sweep(c, "smoothing_limit", 1e-9, std::min(c.trials, 20), [&](int i) {
        SpectralField u = rnd(c.s16, c.seed, 700 + i);
        // weights e^{-lambda/n} -> 1 once n^2 exceeds every retained lambda;
        // the leftover shrinks like lambda_max / n
        double leftover = 1.0;
        double prev = 2.0;
        for (double n : {4.0, 16.0, 256.0, 65536.0, 1e10, 1e14}) {
            SpectralField pu = smoothing_projection(u, n);
            leftover = std::sqrt(h_norm_sq(pu - u) / h_norm_sq(u));
            if (leftover > prev * (1.0 + 1e-12)) return 1.0;  // not shrinking
            prev = leftover;
        }
        return leftover;
    });
}

OracleReport chk_transform_roundtrip(const Ctx& c) {
    return sweep(c, "transform_roundtrip", 1e-13, c.trials, [&](int i) {
        SpectralField u = rnd(c.s16, c.seed, 800 + i);
        double pad = (i % 2 == 0) ? 1.5 : 2.0;
        SpectralField u2 = to_spectral(to_physical(u, pad), u.space_ptr());
        return rel(std::sqrt(h_norm_sq(u2 - u)), std::sqrt(h_norm_sq(u)));
    });
}

OracleReport chk_parseval_consistency(const Ctx& c) {
    return sweep(c, "parseval_consistency", 1e-12, c.trials, [&](int i) {
        SpectralField u = rnd(c.s16, c.seed, 900 + i);
        double h2 = h_norm_sq(u);
        double quad = lp_integral(u, 2.0);
        return rel(std::abs(h2 - quad), h2);
    });
}

OracleReport chk_poincare(const Ctx& c) {
    return sweep(c, "poincare_lambda1", 0.0, c.trials, [&](int i) {
        SpectralField u = rnd(c.s16, c.seed, 1000 + i);
        double slack = 1e-12 * v_norm_sq(u);
        return rel(std::max(0.0, 1.0 * h_norm_sq(u) - v_norm_sq(u) - slack), h_norm_sq(u));
    });
}

OracleReport chk_interpolation(const Ctx& c) {
    // 1/r = th/s + (1-th)/t on even-integer triples (exact quadrature)
    struct Triple { double s, r, t; };
    const Triple triples[] = {{2, 4, 6}, {2, 6, 10}, {4, 6, 8}};
    return sweep(c, "interpolation_211", 1e-10, c.trials, [&](int i) {
        SpectralField u = rnd(c.s16, c.seed, 1100 + i, 0.8);
        double worst = 0.0;
        for (const auto& tr : triples) {
            double th = (1.0 / tr.r - 1.0 / tr.t) / (1.0 / tr.s - 1.0 / tr.t);
            double lhs = lp_norm(u, tr.r);
            double rhs = std::pow(lp_norm(u, tr.s), th) * std::pow(lp_norm(u, tr.t), 1.0 - th);
            worst = std::max(worst, lhs - rhs);  // absolute slack per contract
        }
        return worst;
    });
}

OracleReport chk_b0_skew(const Ctx& c) {
    return sweep(c, "trilinear_b0_skew", kStructuralTol, c.trials, [&](int i) {
        SpectralField u = rnd(c.s16, c.seed, 1200 + i);
        SpectralField v = rnd(c.s16, c.seed, 1250 + i);
        double scale = std::sqrt(v_norm_sq(v)) * lp_norm(u, 4.0) * lp_norm(v, 4.0) + 1e-30;
        return rel(std::abs(trilinear_b(u, v, v)), scale);
    });
}

OracleReport chk_b0_antisym(const Ctx& c) {
    return sweep(c, "trilinear_b0_antisym", kStructuralTol, c.trials, [&](int i) {
        SpectralField u = rnd(c.s16, c.seed, 1300 + i);
        SpectralField v = rnd(c.s16, c.seed, 1350 + i);
        SpectralField w = rnd(c.s16, c.seed, 1370 + i);
        double b1 = trilinear_b(u, v, w);
        double b2 = trilinear_b(u, w, v);
        double scale = std::abs(b1) + std::abs(b2) +
                       std::sqrt(v_norm_sq(v) * v_norm_sq(w)) * lp_norm(u, 4.0) + 1e-30;
        return rel(std::abs(b1 + b2), scale);
    });
}

OracleReport chk_b_energy_orth(const Ctx& c) {
    return sweep(c, "convective_energy_orthogonality", kStructuralTol, c.trials, [&](int i) {
        SpectralField u = rnd(c.s16, c.seed, 1400 + i);
        double val = inner_h(convective_B(u), u);
        double scale = std::sqrt(v_norm_sq(u)) * lp_norm(u, 4.0) * lp_norm(u, 4.0) + 1e-30;
        return rel(std::abs(val), scale);
    });
}

OracleReport chk_c_energy_identity(const Ctx& c) {
    return sweep(c, "forchheimer_energy_identity", kStructuralTol, c.trials, [&](int i) {
        double r = (i % 2 == 0) ? 3.0 : 5.0;
        SpectralField u = rnd(c.s16, c.seed, 1500 + i);
        NonlinearEval ev = eval_nonlinear(u, r);
        double lhs = inner_h(ev.C, u);
        return rel(std::abs(lhs - ev.lr1_integral), ev.lr1_integral);
    });
}

OracleReport chk_b_oracle(const Ctx& c) {
    return sweep(c, "convective_oracle_equiv", kOracleTol, c.trials, [&](int i) {
        SpectralField u = rnd(c.s8, c.seed, 1600 + i);
        SpectralField ps = convective_B(u);
        SpectralField bf = convolution_oracle_B(u, u);
        return rel(std::sqrt(h_norm_sq(ps - bf)), std::sqrt(h_norm_sq(bf)));
    });
}

OracleReport chk_c_oracle(const Ctx& c) {
    return sweep(c, "forchheimer_oracle_equiv", kOracleTol, c.trials, [&](int i) {
        double r = (i % 2 == 0) ? 3.0 : 5.0;
        SpectralField u = rnd(c.s8, c.seed, 1700 + i);
        SpectralField ps = forchheimer_C(u, r);
        SpectralField bf = pointwise_oracle_C(u, r);
        return rel(std::sqrt(h_norm_sq(ps - bf)), std::sqrt(h_norm_sq(bf)));
    });
}

OracleReport chk_trilinear_oracle(const Ctx& c) {
    return sweep(c, "trilinear_oracle_equiv", kOracleTol, c.trials, [&](int i) {
        SpectralField u = rnd(c.s8, c.seed, 1800 + i);
        SpectralField v = rnd(c.s8, c.seed, 1850 + i);
        SpectralField w = rnd(c.s8, c.seed, 1870 + i);
        double a = trilinear_b(u, v, w);
        double b = trilinear_oracle(u, v, w);
        double scale = std::abs(b) + std::sqrt(v_norm_sq(v)) * lp_norm(u, 4.0) * lp_norm(w, 4.0);
        return rel(std::abs(a - b), scale);
    });
}

OracleReport chk_b_bound_2p9(const Ctx& c) {
    return sweep(c, "b_bound_dual_norm", kInequalityTol, c.trials, [&](int i) {
        double r = (i % 2 == 0) ? 5.0 : 7.0;
        SpectralField u = rnd(c.s16, c.seed, 1900 + i);
        SpectralField v = rnd(c.s16, c.seed, 1950 + i);
        BoundPair bp = b_operator_bound_check(u, v, r);
        return rel(std::max(0.0, bp.lhs - bp.rhs), std::max(bp.rhs, 1e-30));
    });
}

OracleReport chk_b_bound_29a(const Ctx& c) {
    return sweep(c, "b_self_bound_interpolated", kInequalityTol, c.trials, [&](int i) {
        double r = (i % 2 == 0) ? 5.0 : 7.0;
        SpectralField u = rnd(c.s16, c.seed, 2000 + i);
        BoundPair bp = b_self_bound_check(u, r);
        return rel(std::max(0.0, bp.lhs - bp.rhs), std::max(bp.rhs, 1e-30));
    });
}

OracleReport chk_c_lipschitz(const Ctx& c) {
    return sweep(c, "forchheimer_local_lipschitz", kInequalityTol, c.trials, [&](int i) {
        SpectralField u = rnd(c.s16, c.seed, 2100 + i);
        SpectralField v = rnd(c.s16, c.seed, 2150 + i);
        BoundPair bp = lipschitz_check_C(u, v, 5.0);
        return rel(std::max(0.0, bp.lhs - bp.rhs), std::max(bp.rhs, 1e-30));
    });
}

OracleReport chk_c_monotone(const Ctx& c) {
    return sweep(c, "forchheimer_monotone", kInequalityTol, c.trials, [&](int i) {
        double r = (i % 2 == 0) ? 3.0 : 5.0;
        SpectralField u = rnd(c.s16, c.seed, 2200 + i);
        SpectralField v = rnd(c.s16, c.seed, 2250 + i);
        BoundPair bp = c_monotone_bound(u, v, r);
        double scale = std::abs(bp.lhs) + std::abs(bp.rhs) + 1e-30;
        return rel(std::max(0.0, -bp.lhs), scale);
    });
}

OracleReport chk_c_lower_bound(const Ctx& c) {
    return sweep(c, "forchheimer_lower_bound", kInequalityTol, c.trials, [&](int i) {
        double r = (i % 2 == 0) ? 3.0 : 5.0;
        SpectralField u = rnd(c.s16, c.seed, 2300 + i);
        SpectralField v = rnd(c.s16, c.seed, 2350 + i);
        BoundPair bp = c_monotone_bound(u, v, r);
        double scale = std::abs(bp.lhs) + std::abs(bp.rhs) + 1e-30;
        return rel(std::max(0.0, bp.rhs - bp.lhs), scale);
    });
}

OracleReport chk_monotonicity_thm22(const Ctx& c) {
    return sweep(c, "g_monotonicity_shifted", kInequalityTol, c.trials, [&](int i) {
        PhysicsParams p;
        p.mu = 1.0;
        p.beta = 1.0;
        p.r = (i % 2 == 0) ? 5.0 : 7.0;
        SpectralField u = rnd(c.s16, c.seed, 2400 + i);
        SpectralField v = rnd(c.s16, c.seed, 2450 + i);
        MonotonicityReport rep = monotonicity_gap(u, v, p);
        return rel(std::max(0.0, -rep.gap), rep.scale);
    });
}

OracleReport chk_monotonicity_thm23(const Ctx& c) {
    return sweep(c, "g_monotonicity_critical", kInequalityTol, c.trials, [&](int i) {
        PhysicsParams p;
        p.mu = 1.0;
        p.beta = 1.0;
        p.r = 3.0;
        SpectralField u = rnd(c.s16, c.seed, 2500 + i);
        SpectralField v = rnd(c.s16, c.seed, 2550 + i);
        MonotonicityReport rep = monotonicity_gap(u, v, p);
        return rel(std::max(0.0, -rep.gap), rep.scale);
    });
}

OracleReport chk_r3_guard(const Ctx& c) {
    OracleReport r;
    r.name = "g_monotonicity_guard_r3";
    r.seed = c.seed;
    r.trials = 1;
    r.tolerance = 0.0;
    PhysicsParams p;
    p.mu = 0.4;
    p.beta = 0.4;  // 2 beta mu = 0.32 < 1: outside both theorems
    p.r = 3.0;
    SpectralField u = rnd(c.s16, c.seed, 2600);
    SpectralField v = rnd(c.s16, c.seed, 2650);
    try {
        monotonicity_gap(u, v, p);
        r.pass = false;
        r.note = "expected rejection of r=3 with 2*beta*mu < 1";
    } catch (const std::domain_error&) {
        r.pass = true;
        r.skipped = true;
        r.note = "outside theorem hypotheses: correctly refused";
    }
    return r;
}

OracleReport chk_local_monotonicity_fe2(const Ctx& c) {
    return sweep(c, "g_local_monotonicity_2d", kInequalityTol, c.trials, [&](int i) {
        PhysicsParams p;
        p.mu = 1.0;
        p.beta = 1.0;
        p.r = 3.0;
        SpectralField u = rnd(c.s16, c.seed, 2700 + i);
        SpectralField v = rnd(c.s16, c.seed, 2750 + i);
        SpectralField du = u - v;
        double inner = inner_h(combined_G(u, p) - combined_G(v, p), du);
        double shift = 27.0 / (32.0 * std::pow(p.mu, 3)) * std::pow(lp_norm(v, 4.0), 4) *
                       h_norm_sq(du);
        double scale = std::abs(inner) + shift + v_norm_sq(du);
        return rel(std::max(0.0, -(inner + shift)), scale);
    });
}

OracleReport chk_regularity_370(const Ctx& c) {
    return sweep(c, "regularity_gradient_chain", kInequalityTol, c.trials, [&](int i) {
        double r = (i % 2 == 0) ? 3.0 : 5.0;
        SpectralField u = rnd(c.s16, c.seed, 2800 + i);
        RegularityTriple t = periodic_regularity_bounds(u, r);
        double scale = t.i3 + 1e-30;
        double worst = std::max(0.0, -t.i1);
        worst = std::max(worst, t.i1 - t.i2);
        worst = std::max(worst, t.i2 - t.i3);
        return rel(worst, scale);
    });
}

OracleReport chk_regularity_371(const Ctx& c) {
    // The constant in ||u||_{L^{3(r+1)}}^{r+1} <= C I1 is not pinned by the
    // theory; the check asserts shape only: both sides finite, nonnegative,
    // and the ratio bounded over the sweep (reported in the note).
    OracleReport r;
    r.name = "regularity_sobolev_shape";
    r.seed = c.seed;
    r.trials = c.trials;
    r.tolerance = 0.0;
    double worst_ratio = 0.0;
    bool ok = true;
    for (int i = 0; i < c.trials; ++i) {
        double rr = (i % 2 == 0) ? 3.0 : 5.0;
        SpectralField u = rnd(c.s16, c.seed, 2900 + i, 0.7);
        RegularityTriple t = periodic_regularity_bounds(u, rr);
        double lhs = std::pow(lp_norm(u, 3.0 * (rr + 1.0)), rr + 1.0);
        if (!(std::isfinite(lhs) && lhs >= 0.0 && t.i1 >= 0.0)) ok = false;
        if (t.i1 > 0.0) worst_ratio = std::max(worst_ratio, lhs / t.i1);
    }
    r.pass = ok && std::isfinite(worst_ratio);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max ratio lhs/I1 = %.3g (constant not specified)",
                  worst_ratio);
    r.note = buf;
    return r;
}

OracleReport chk_demicontinuity(const Ctx& c) {
    return sweep(c, "g_demicontinuity_smoke", 1e-8, std::min(c.trials, 10), [&](int i) {
        PhysicsParams p;
        p.mu = 1.0;
        p.beta = 1.0;
        p.r = 5.0;
        SpectralField u = rnd(c.s16, c.seed, 3000 + i);
        SpectralField gu = combined_G(u, p);
        SpectralField w1 = rnd(c.s16, c.seed, 3050 + i);
        SpectralField w2 = shear_mode(c.s16, 1, 0, 0, 1.0);
        double first = -1.0, last = 0.0;
        double scale = std::sqrt(h_norm_sq(gu)) + 1.0;
        for (double kcut : {2.0, 3.0, 5.0, 7.0, 100.0}) {
            SpectralField un = truncate_modes(u, kcut);
            SpectralField gn = combined_G(un, p);
            double val = std::abs(inner_h(gn - gu, w1)) + std::abs(inner_h(gn - gu, w2));
            if (first < 0.0) first = val;
            last = val;
        }
        if (first > 0.0 && last > 0.5 * first) return 1.0;  // no decrease: fail
        return rel(last, scale);
    });
}

OracleReport chk_hs_growth(const Ctx& c) {
    return sweep(c, "noise_growth_condition", kInequalityTol, c.trials, [&](int i) {
        SpectralField us = rnd(c.s16, c.seed, 3100 + i, 0.5);
        SpectralField u = rnd(c.s16, c.seed, 3150 + i, 1.5);
        QSpectrum q = QSpectrum::power_law(c.s16, 0.5, 4.0);
        std::vector<double> sk(q.q.size(), 0.3);
        const NoiseModel models[] = {NoiseModel::additive(q),
                                     NoiseModel::scalar_stationary(0.7, us),
                                     NoiseModel::linear_diagonal(q, sk, us)};
        double worst = 0.0;
        for (const auto& m : models) {
            double hs = hs_norm_sq(m, 0.0, u);
            double bound = m.growth_K() * (1.0 + h_norm_sq(u));
            worst = std::max(worst, rel(std::max(0.0, hs - bound), std::max(bound, 1e-30)));
        }
        return worst;
    });
}

OracleReport chk_hs_lipschitz(const Ctx& c) {
    return sweep(c, "noise_lipschitz_condition", kInequalityTol, c.trials, [&](int i) {
        SpectralField us = rnd(c.s16, c.seed, 3200 + i, 0.5);
        SpectralField u = rnd(c.s16, c.seed, 3250 + i);
        SpectralField v = rnd(c.s16, c.seed, 3270 + i);
        QSpectrum q = QSpectrum::power_law(c.s16, 0.5, 4.0);
        std::vector<double> sk(q.q.size());
        for (std::size_t j = 0; j < sk.size(); ++j) sk[j] = 0.1 + 0.01 * (j % 7);
        const NoiseModel models[] = {NoiseModel::additive(q),
                                     NoiseModel::scalar_stationary(0.7, us),
                                     NoiseModel::linear_diagonal(q, sk, us)};
        double worst = 0.0;
        double d2 = h_norm_sq(u - v);
        for (const auto& m : models) {
            // ||Phi(u)-Phi(v)||_LQ^2 directly from the variant formulas
            double lhs = 0.0;
            switch (m.kind) {
                case NoiseModel::Kind::Additive: lhs = 0.0; break;
                case NoiseModel::Kind::ScalarStationary:
                    lhs = m.sigma * m.sigma * d2;
                    break;
                case NoiseModel::Kind::LinearDiagonal: {
                    SpectralField dv = u - v;
                    const int npol = c.s16->n_polarizations();
                    for (int mm : c.s16->pair_representatives())
                        for (int pp = 0; pp < npol; ++pp) {
                            std::size_t idx = static_cast<std::size_t>(mm) * npol + pp;
                            RealModeCoeff rc = real_mode_coeff(dv, mm, pp);
                            lhs += m.spectrum.q[idx] * m.sigma_k[idx] * m.sigma_k[idx] *
                                   (rc.c_cos * rc.c_cos + rc.c_sin * rc.c_sin);
                        }
                    break;
                }
                default: break;
            }
            double bound = m.lipschitz_L() * d2;
            worst = std::max(worst, rel(std::max(0.0, lhs - bound), std::max(bound, 1e-30)));
        }
        return worst;
    });
}

OracleReport chk_dim3_smoke(const Ctx& c) {
    int trials = std::min(c.trials, 10);
    return sweep(c, "dim3_smoke_subset", kOracleTol, trials, [&](int i) {
        SpectralField u = rnd(c.s8_3d, c.seed, 3300 + i);
        SpectralField v = rnd(c.s8_3d, c.seed, 3350 + i);
        double worst = 0.0;
        // Poincare
        worst = std::max(worst, rel(std::max(0.0, h_norm_sq(u) - v_norm_sq(u)), h_norm_sq(u)));
        // skew symmetry
        double b0 = trilinear_b(u, v, v);
        double sc = std::sqrt(v_norm_sq(v)) * lp_norm(u, 4.0) * lp_norm(v, 4.0) + 1e-30;
        worst = std::max(worst, rel(std::abs(b0), sc));
        // oracle equivalence
        SpectralField ps = convective_B(u);
        SpectralField bf = convolution_oracle_B(u, u);
        worst = std::max(worst, rel(std::sqrt(h_norm_sq(ps - bf)), std::sqrt(h_norm_sq(bf))));
        // C energy identity, r = 3
        NonlinearEval ev = eval_nonlinear(u, 3.0);
        worst = std::max(worst, rel(std::abs(inner_h(ev.C, u) - ev.lr1_integral),
                                     ev.lr1_integral));
        // monotonicity r = 5
        PhysicsParams p;
        p.r = 5.0;
        MonotonicityReport rep = monotonicity_gap(u, v, p);
        worst = std::max(worst, rel(std::max(0.0, -rep.gap), rep.scale));
        return worst;
    });
}

const Entry kEntries[] = {
    {"leray_idempotent", chk_leray_idempotent},
    {"leray_gradient_kernel", chk_leray_gradient_kernel},
    {"leray_oracle_equiv", chk_leray_oracle},
    {"stokes_parseval", chk_stokes_parseval},
    {"stokes_leray_commute", chk_stokes_leray_commute},
    {"smoothing_contraction", chk_smoothing_contraction},
    {"smoothing_limit", chk_smoothing_limit},
    {"transform_roundtrip", chk_transform_roundtrip},
    {"parseval_consistency", chk_parseval_consistency},
    {"poincare_lambda1", chk_poincare},
    {"interpolation_211", chk_interpolation},
    {"trilinear_b0_skew", chk_b0_skew},
    {"trilinear_b0_antisym", chk_b0_antisym},
    {"convective_energy_orthogonality", chk_b_energy_orth},
    {"forchheimer_energy_identity", chk_c_energy_identity},
    {"convective_oracle_equiv", chk_b_oracle},
    {"forchheimer_oracle_equiv", chk_c_oracle},
    {"trilinear_oracle_equiv", chk_trilinear_oracle},
    {"b_bound_dual_norm", chk_b_bound_2p9},
    {"b_self_bound_interpolated", chk_b_bound_29a},
    {"forchheimer_local_lipschitz", chk_c_lipschitz},
    {"forchheimer_monotone", chk_c_monotone},
    {"forchheimer_lower_bound", chk_c_lower_bound},
    {"g_monotonicity_shifted", chk_monotonicity_thm22},
    {"g_monotonicity_critical", chk_monotonicity_thm23},
    {"g_monotonicity_guard_r3", chk_r3_guard},
    {"g_local_monotonicity_2d", chk_local_monotonicity_fe2},
    {"regularity_gradient_chain", chk_regularity_370},
    {"regularity_sobolev_shape", chk_regularity_371},
    {"g_demicontinuity_smoke", chk_demicontinuity},
    {"noise_growth_condition", chk_hs_growth},
    {"noise_lipschitz_condition", chk_hs_lipschitz},
    {"dim3_smoke_subset", chk_dim3_smoke},
};

}  // namespace

std::vector<std::string> battery_manifest() {
    std::vector<std::string> names;
    for (const auto& e : kEntries) names.emplace_back(e.name);
    return names;
}

std::vector<OracleReport> run_property_battery(std::uint64_t seed, int trials) {
    Ctx c;
    c.seed = seed;
    c.trials = trials;
    c.s16 = SpectralSpace::make(2, 16);
    c.s8 = SpectralSpace::make(2, 8);
    c.s8_3d = SpectralSpace::make(3, 8);
    std::vector<OracleReport> out;
    out.reserve(std::size(kEntries));
    for (const auto& e : kEntries) out.push_back(e.fn(c));
    return out;
}

bool battery_all_pass(const std::vector<OracleReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

}  // namespace scbf
