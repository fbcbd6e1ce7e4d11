#include "scbf/ergodics.hpp"

#include <cmath>

namespace scbf {
namespace {

// sup over the retained span of ||w||_{L^{r+1}} / ||w||_H via
//   ||w||_inf <= sum |what| <= sqrt(N) ||what||_2 = sqrt(N/(2pi)^d) ||w||_H
//   ||w||_{r+1}^{r+1} <= ||w||_inf^{r-1} ||w||_H^2.
double lp_inverse_constant(const SpectralSpace& sp, double r) {
    double n_coeff = static_cast<double>(sp.n_retained()) * sp.dim();
    double c_inf = std::sqrt(n_coeff / sp.cell_volume());
    return std::pow(c_inf, (r - 1.0) / (r + 1.0));
}

}  // namespace

std::vector<Observable> default_observables(const SpacePtr& space, double r) {
    std::vector<Observable> obs;
    obs.push_back({"h2", [](const SpectralField& u) { return h_norm_sq(u); },
                   [](const EnsembleMaxStats& s) { return 2.0 * s.max_h; }});
    double sqrt_lmax = std::sqrt(space->lambda_max());
    obs.push_back({"v2", [](const SpectralField& u) { return v_norm_sq(u); },
                   [sqrt_lmax](const EnsembleMaxStats& s) { return 2.0 * s.max_v * sqrt_lmax; }});
    double c_inv = lp_inverse_constant(*space, r);
    obs.push_back({"lr1", [r](const SpectralField& u) { return lp_integral(u, r + 1.0); },
                   [r, c_inv](const EnsembleMaxStats& s) {
                       return (r + 1.0) * std::pow(s.max_lp, r) * c_inv;
                   }});

    // low-mode amplitudes |uhat(k)|^2 (component-vector magnitude) for the
    // representative wavevectors with |k|^2 <= 4
    const double vol = space->cell_volume();
    for (int m : space->pair_representatives()) {
        if (space->lambda(m) > 4.0) continue;
        const auto& k = space->mode(m);
        char name[48];
        std::snprintf(name, sizeof(name), "amp_%d_%d_%d", k[0], k[1], k[2]);
        obs.push_back({name,
                       [m](const SpectralField& u) {
                           double a = 0.0;
                           for (int c = 0; c < u.space().dim(); ++c)
                               a += std::norm(u.at(c, m));
                           return a;
                       },
                       // | |uhat|^2 - |vhat|^2 | <= 2 max|uhat| ||u-v||_H / sqrt(vol),
                       // and |uhat| <= ||u||_H / sqrt(vol)
                       [vol](const EnsembleMaxStats& s) { return 2.0 * s.max_h / vol; }});
    }

    // bounded Lipschitz probes tanh(<u,g>_H), ||g||_H = 1 so L_phi = 1
    struct ProbeSpec {
        const char* name;
        RandomFieldLaw law;
    };
    std::vector<ProbeSpec> specs = {{"tanh_probe1", {2.0, 1.0, 777, 0}},
                                    {"tanh_probe2", {1.0, 1.0, 778, 2}}};
    for (const auto& spec : specs) {
        SpectralField g = random_field(space, spec.law, 9000);
        double gh = std::sqrt(h_norm_sq(g));
        g.scale(1.0 / gh);
        auto gptr = std::make_shared<SpectralField>(std::move(g));
        obs.push_back({spec.name,
                       [gptr](const SpectralField& u) { return std::tanh(inner_h(u, *gptr)); },
                       [](const EnsembleMaxStats&) { return 1.0; }});
    }
    return obs;
}

TimeAverageReport time_average(const std::vector<std::string>& names,
                               const std::vector<std::vector<double>>& series,
                               const std::vector<double>& times, double burn_frac,
                               int n_batches) {
    if (names.size() != series.size())
        throw std::invalid_argument("time_average: names/series mismatch");
    TimeAverageReport rep;
    const double T = times.back();
    rep.burn_in = burn_frac * T;
    std::size_t first = 0;
    while (first < times.size() && times[first] < rep.burn_in) ++first;
    for (std::size_t j = 0; j < series.size(); ++j) {
        std::vector<double> tail(series[j].begin() + first, series[j].end());
        if (static_cast<int>(tail.size()) < 2 * n_batches)
            throw std::invalid_argument("time_average: insufficient samples after burn-in");
        BatchMeans bm = batch_means(tail, n_batches);
        rep.entries.push_back({names[j], bm.mean, bm.se, bm.batches,
                               static_cast<int>(tail.size())});
    }
    return rep;
}

TightnessReport tightness_diagnostic(const SpectralField& u0, const PhysicsParams& p,
                                     const NoiseModel& model, int paths, const SolverConfig& cfg,
                                     std::uint64_t seed) {
    const double K = model.growth_K();
    const double lambda1 = 1.0;
    if (!(p.mu > K / (2.0 * lambda1)))
        throw ConditionNotMet("tightness_diagnostic: need mu > K/(2 lambda_1)");
    const double T = cfg.t_end;
    std::vector<double> avg(paths, 0.0);
    parallel_for(paths, [&](int i) {
        GaussianStream gs(seed, static_cast<std::uint32_t>(i), StreamPurpose::Noise);
        TrajectoryRecord rec = simulate(u0, p, model, cfg, gs);
        avg[i] = rec.iv.back() / T;
    });
    MeanSe ms = mean_se(avg);
    TightnessReport rep;
    rep.time_avg_v2 = ms.mean;
    rep.se = ms.se;
    rep.bound = (h_norm_sq(u0) + K * T) / ((2.0 * p.mu - K / lambda1) * T);
    rep.holds = rep.time_avg_v2 <= rep.bound + 2.0 * ms.se;
    return rep;
}

MixingReport mixing_test(const PhysicsParams& p, const NoiseModel& model,
                         const SpectralField& u0, const SpectralField& v0,
                         const std::vector<Observable>& observables, int paths,
                         const SolverConfig& cfg, std::uint64_t seed) {
    const double L = model.lipschitz_L();
    const double rate = theta_rate(p, L);
    if (!(rate > 0.0)) throw ConditionNotMet("mixing_test: need mu lambda_1 > 2 eta + L");

    const std::size_t nobs = observables.size();
    std::vector<std::vector<double>> phi_u(nobs, std::vector<double>(paths, 0.0));
    std::vector<std::vector<double>> phi_v(nobs, std::vector<double>(paths, 0.0));
    std::vector<EnsembleMaxStats> stats(paths);
    std::vector<int> blew(paths, 0);
    const double r = p.r;
    parallel_for(paths, [&](int i) {
        GaussianStream gs(seed, static_cast<std::uint32_t>(i), StreamPurpose::Noise);
        CoupledRecord rec = simulate_coupled(u0, v0, p, model, cfg, gs);
        if (rec.status != RunStatus::Ok) {
            blew[i] = 1;
            return;
        }
        for (std::size_t j = 0; j < nobs; ++j) {
            phi_u[j][i] = observables[j].eval(rec.final_u);
            phi_v[j][i] = observables[j].eval(rec.final_v);
        }
        EnsembleMaxStats& st = stats[i];
        for (const SpectralField* f : {&rec.final_u, &rec.final_v}) {
            st.max_h = std::max(st.max_h, std::sqrt(h_norm_sq(*f)));
            st.max_v = std::max(st.max_v, std::sqrt(v_norm_sq(*f)));
            st.max_lp = std::max(st.max_lp, lp_norm(*f, r + 1.0));
        }
    });

    MixingReport rep;
    rep.rate = rate;
    EnsembleMaxStats global;
    int good = 0;
    for (int i = 0; i < paths; ++i) {
        if (blew[i]) {
            ++rep.blowups;
            continue;
        }
        ++good;
        global.max_h = std::max(global.max_h, stats[i].max_h);
        global.max_v = std::max(global.max_v, stats[i].max_v);
        global.max_lp = std::max(global.max_lp, stats[i].max_lp);
    }
    if (good < 2) throw std::runtime_error("mixing_test: too many failed paths");

    const double ic_scale = std::sqrt(h_norm_sq(u0)) + std::sqrt(h_norm_sq(v0));
    for (std::size_t j = 0; j < nobs; ++j) {
        std::vector<double> du, dv, diff;
        for (int i = 0; i < paths; ++i) {
            if (blew[i]) continue;
            du.push_back(phi_u[j][i]);
            dv.push_back(phi_v[j][i]);
            diff.push_back(phi_u[j][i] - phi_v[j][i]);
        }
        MixingReport::Entry e;
        e.name = observables[j].name;
        e.est_u = mean_se(du).mean;
        e.est_v = mean_se(dv).mean;
        MeanSe d = mean_se(diff);
        e.discrepancy = std::abs(d.mean);
        e.se = d.se;
        e.lipschitz = observables[j].lipschitz(global);
        e.envelope = e.lipschitz * std::exp(-rate * cfg.t_end / 2.0) * ic_scale;
        e.under_envelope = e.discrepancy <= e.envelope + 3.0 * e.se;
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace scbf
