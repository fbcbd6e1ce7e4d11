#include "scbf/stability.hpp"

#include <cmath>
#include <limits>

namespace scbf {
namespace {

EnsembleStats aggregate(const std::vector<std::vector<double>>& dev2_by_path,
                        const std::vector<double>& times) {
    EnsembleStats st;
    st.times = times;
    st.paths = static_cast<int>(dev2_by_path.size());
    const std::size_t nt = times.size();
    st.mean_dev2.assign(nt, 0.0);
    st.ci_half.assign(nt, 0.0);
    for (std::size_t i = 0; i < nt; ++i) {
        std::vector<double> vals;
        vals.reserve(dev2_by_path.size());
        for (const auto& path : dev2_by_path) vals.push_back(path[i]);
        MeanSe ms = mean_se(vals);
        st.mean_dev2[i] = ms.mean;
        st.ci_half[i] = 2.0 * ms.se;
    }
    return st;
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Satisfied: return "satisfied";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

double kappa_rate(const PhysicsParams& p) { return p.mu * 1.0 - 2.0 * eta_constant(p); }

double theta_rate(const PhysicsParams& p, double lipschitz_L) {
    return p.mu * 1.0 - (2.0 * eta_constant(p) + lipschitz_L);
}

double zeta_rate(const PhysicsParams& p, double sigma) {
    return 0.5 * (sigma * sigma + 2.0 * p.mu * 1.0 - 2.0 * eta_constant(p));
}

RateReport fit_decay_rate(const EnsembleStats& stats, double theoretical, double burn_frac) {
    RateReport rep;
    rep.theoretical_rate = theoretical;
    rep.stats = stats;
    const double T = stats.times.back();
    const double t0 = burn_frac * T;
    std::vector<double> x, y;
    bool any_positive = false;
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        if (stats.times[i] < t0) continue;
        if (stats.mean_dev2[i] > 1e-300) {
            any_positive = true;
            x.push_back(stats.times[i]);
            y.push_back(std::log(stats.mean_dev2[i]));
        }
    }
    if (!any_positive) {
        // deviation identically zero: the exponential envelope holds trivially
        rep.fitted_rate = std::numeric_limits<double>::infinity();
        rep.fit_ci = 0.0;
        rep.verdict = Verdict::Satisfied;
        return rep;
    }
    if (x.size() < 8) {
        rep.verdict = Verdict::Inconclusive;
        return rep;
    }
    LineFit f = ols_fit(x, y);
    rep.fitted_rate = -f.slope;
    rep.fit_ci = 2.0 * f.slope_se;
    rep.window_t0 = x.front();
    rep.window_t1 = x.back();
    rep.verdict = rep.fitted_rate >= theoretical - rep.fit_ci ? Verdict::Satisfied
                                                              : Verdict::Violated;
    return rep;
}

RateReport ms_stability_experiment(const PhysicsParams& p, const NoiseModel& model,
                                   const SpectralField& u_inf, const RandomFieldLaw& u0_law,
                                   int paths, const SolverConfig& cfg, std::uint64_t seed,
                                   double burn_frac) {
    const double L = model.lipschitz_L();
    const double theta = theta_rate(p, L);  // computes eta; validates regime
    if (!(theta > 0.0))
        throw ConditionNotMet("ms_stability_experiment: need mu lambda_1 > 2 eta + L");

    std::vector<std::vector<double>> dev2(paths);
    std::vector<std::vector<double>> times_by(paths);
    std::vector<int> blew(paths, 0);
    SpacePtr space = u_inf.space_ptr();
    parallel_for(paths, [&](int i) {
        RandomFieldLaw law = u0_law;
        law.seed = seed;
        SpectralField u0 = random_field(space, law, static_cast<std::uint32_t>(i) + 1);
        GaussianStream gs(seed, static_cast<std::uint32_t>(i), StreamPurpose::Noise);
        SimOptions opts;
        opts.reference = &u_inf;
        TrajectoryRecord rec = simulate(u0, p, model, cfg, gs, opts);
        if (rec.status != RunStatus::Ok) {
            blew[i] = 1;
            return;
        }
        dev2[i] = rec.dev2;
        times_by[i] = rec.t;
    });
    int blowups = 0;
    for (int b : blew) blowups += b;
    std::vector<double> times;
    std::vector<std::vector<double>> ok;
    for (int i = 0; i < paths; ++i) {
        if (blew[i]) continue;
        if (times.empty()) times = std::move(times_by[i]);
        ok.push_back(std::move(dev2[i]));
    }
    if (times.empty() || ok.size() < 2)
        throw std::runtime_error("ms_stability_experiment: too many failed paths");
    RateReport rep = fit_decay_rate(aggregate(ok, times), theta, burn_frac);
    rep.blowups = blowups;
    return rep;
}

RateReport contraction_experiment(const PhysicsParams& p, const NoiseModel& model,
                                  const SpectralField& u0, const SpectralField& v0, int paths,
                                  const SolverConfig& cfg, std::uint64_t seed,
                                  double burn_frac) {
    const double L = model.lipschitz_L();
    const double rate = theta_rate(p, L);
    if (!(rate > 0.0))
        throw ConditionNotMet("contraction_experiment: need mu lambda_1 > 2 eta + L");
    std::vector<std::vector<double>> dev2(paths);
    std::vector<std::vector<double>> times_by(paths);
    std::vector<int> blew(paths, 0);
    parallel_for(paths, [&](int i) {
        GaussianStream gs(seed, static_cast<std::uint32_t>(i), StreamPurpose::Noise);
        CoupledRecord rec = simulate_coupled(u0, v0, p, model, cfg, gs);
        if (rec.status != RunStatus::Ok) {
            blew[i] = 1;
            return;
        }
        dev2[i] = rec.dev2;
        times_by[i] = rec.t;
    });
    int blowups = 0;
    for (int b : blew) blowups += b;
    std::vector<double> times;
    std::vector<std::vector<double>> ok;
    for (int i = 0; i < paths; ++i) {
        if (blew[i]) continue;
        if (times.empty()) times = std::move(times_by[i]);
        ok.push_back(std::move(dev2[i]));
    }
    if (times.empty() || ok.size() < 2)
        throw std::runtime_error("contraction_experiment: too many failed paths");
    RateReport rep = fit_decay_rate(aggregate(ok, times), rate, burn_frac);
    rep.blowups = blowups;
    return rep;
}

StabilizationReport stabilization_pathwise_check(const PhysicsParams& p, double sigma,
                                                 const TrajectoryRecord& rec) {
    if (!rec.has_wiener)
        throw std::invalid_argument("stabilization_pathwise_check: needs a scalar-noise record");
    if (!rec.has_dev)
        throw std::invalid_argument("stabilization_pathwise_check: needs the deviation column");
    StabilizationReport rep;
    rep.zeta = zeta_rate(p, sigma);
    const double dev2_0 = rec.dev2.front();
    if (dev2_0 <= 0.0) {
        rep.degenerate = true;  // both sides -inf; nothing to check
        return rep;
    }
    const double log0 = std::log(dev2_0);
    const double drift = -2.0 * p.mu * 1.0 + 2.0 * eta_constant(p) - sigma * sigma;
    const double slack = std::max(2.0 * sigma, 1.0) * std::sqrt(rec.dt);
    for (std::size_t i = 1; i < rec.t.size(); ++i) {
        double rhs = log0 + drift * rec.t[i] + 2.0 * sigma * rec.wiener[i] + slack;
        double lhs = rec.dev2[i] > 0.0 ? std::log(rec.dev2[i])
                                       : -std::numeric_limits<double>::infinity();
        ++rep.checked;
        if (lhs > rhs) ++rep.violations;
    }
    rep.violation_fraction = rep.checked ? double(rep.violations) / rep.checked : 0.0;
    return rep;
}

double as_lyapunov_estimate(const TrajectoryRecord& rec) {
    if (!rec.has_dev) throw std::invalid_argument("as_lyapunov_estimate: needs deviation column");
    const double T = rec.t.back();
    std::vector<double> x, y;
    for (std::size_t i = 0; i < rec.t.size(); ++i) {
        if (rec.t[i] < 0.5 * T) continue;
        if (rec.dev2[i] <= 0.0 || !std::isfinite(std::log(rec.dev2[i])))
            return -std::numeric_limits<double>::infinity();
        x.push_back(rec.t[i]);
        y.push_back(0.5 * std::log(rec.dev2[i]));  // log ||u - ref||_H
    }
    if (x.size() < 3) return -std::numeric_limits<double>::infinity();
    return ols_fit(x, y).slope;
}

}  // namespace scbf
