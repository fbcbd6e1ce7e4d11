#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scbf/ergodics.hpp"

using namespace scbf;

namespace {
SpacePtr s8() {
    static SpacePtr sp = SpectralSpace::make(2, 8);
    return sp;
}
SpectralField rnd(std::uint32_t tag, double amp = 0.3) {
    RandomFieldLaw law;
    law.seed = 173205;
    law.amplitude = amp;
    return random_field(s8(), law, tag);
}

struct LongRun {
    std::vector<double> times;
    std::vector<std::vector<double>> series;
    std::vector<std::string> names;
    TrajectoryRecord rec;
};

LongRun run_observed(const PhysicsParams& p, const NoiseModel& model, const SolverConfig& cfg,
                     const SpectralField& u0, std::uint32_t path,
                     const std::vector<Observable>& obs) {
    LongRun lr;
    lr.series.resize(obs.size());
    for (const auto& o : obs) lr.names.push_back(o.name);
    SimOptions opts;
    opts.on_record = [&](double t, const SpectralField& u) {
        lr.times.push_back(t);
        for (std::size_t j = 0; j < obs.size(); ++j) lr.series[j].push_back(obs[j].eval(u));
    };
    GaussianStream gs(8091, path, StreamPurpose::Noise);
    lr.rec = simulate(u0, p, model, cfg, gs, opts);
    return lr;
}
}  // namespace

TEST_CASE("default observables: names, bounded probes, positive constants") {
    auto obs = default_observables(s8(), 5.0);
    bool has_h2 = false, has_probe = false, has_amp = false;
    EnsembleMaxStats st;
    st.max_h = 2.0;
    st.max_v = 4.0;
    st.max_lp = 1.5;
    for (const auto& o : obs) {
        if (o.name == "h2") has_h2 = true;
        if (o.name == "tanh_probe1") has_probe = true;
        if (o.name.rfind("amp_", 0) == 0) has_amp = true;
        CHECK(o.lipschitz(st) > 0.0);
    }
    CHECK(has_h2);
    CHECK(has_probe);
    CHECK(has_amp);
    // tanh probes are bounded by 1 and exactly 1-Lipschitz in H
    SpectralField big = rnd(1, 50.0);
    for (const auto& o : obs) {
        if (o.name.rfind("tanh", 0) == 0) {
            CHECK(std::abs(o.eval(big)) <= 1.0);
            CHECK(o.lipschitz(st) == 1.0);
        }
    }
}

TEST_CASE("time averages: constant observable is exact, errors on short series") {
    std::vector<double> times;
    std::vector<double> ones, ramp;
    for (int i = 0; i < 200; ++i) {
        times.push_back(0.01 * i);
        ones.push_back(1.0);
        ramp.push_back(i);
    }
    TimeAverageReport rep = time_average({"one", "ramp"}, {ones, ramp}, times, 0.2);
    CHECK(rep.entries[0].average == 1.0);
    CHECK(rep.entries[0].se == 0.0);
    CHECK(rep.entries[0].batches == 20);
    CHECK(rep.entries[1].se > 0.0);

    std::vector<double> shrt(10, 1.0), ts(10, 0.0);
    for (int i = 0; i < 10; ++i) ts[i] = i;
    CHECK_THROWS(time_average({"x"}, {shrt}, ts, 0.2));
}

TEST_CASE("linear observable under symmetric additive noise averages to zero") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 3.0;
    NoiseModel model = NoiseModel::additive(QSpectrum::power_law(s8(), 0.05, 4.0));
    SolverConfig cfg;
    cfg.dt = 5e-3;
    cfg.t_end = 40.0;
    cfg.record_every = 4;
    SpectralField g = rnd(2);
    g.scale(1.0 / std::sqrt(h_norm_sq(g)));
    std::vector<Observable> obs;
    obs.push_back({"lin", [&g](const SpectralField& u) { return inner_h(u, g); },
                   [](const EnsembleMaxStats&) { return 1.0; }});
    LongRun lr = run_observed(p, model, cfg, SpectralField(s8()), 0, obs);
    REQUIRE(lr.rec.status == RunStatus::Ok);
    TimeAverageReport rep = time_average(lr.names, lr.series, lr.times, 0.2);
    CHECK(std::abs(rep.entries[0].average) <= 3.0 * rep.entries[0].se);
}

TEST_CASE("running h2 average is stable under doubling of the horizon") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 3.0;
    NoiseModel model = NoiseModel::additive(QSpectrum::power_law(s8(), 0.05, 4.0));
    auto obs = default_observables(s8(), p.r);
    std::vector<Observable> h2_only = {obs[0]};
    SolverConfig cfg;
    cfg.dt = 5e-3;
    cfg.t_end = 30.0;
    cfg.record_every = 4;
    LongRun a = run_observed(p, model, cfg, SpectralField(s8()), 0, h2_only);
    cfg.t_end = 60.0;
    LongRun b = run_observed(p, model, cfg, SpectralField(s8()), 0, h2_only);
    TimeAverageReport ra = time_average(a.names, a.series, a.times, 0.2);
    TimeAverageReport rb = time_average(b.names, b.series, b.times, 0.2);
    double se = std::sqrt(ra.entries[0].se * ra.entries[0].se +
                          rb.entries[0].se * rb.entries[0].se);
    CHECK(std::abs(ra.entries[0].average - rb.entries[0].average) <= 3.0 * se);
}

TEST_CASE("tightness diagnostic: bound holds; rejected outside the regime") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 3.0;
    NoiseModel model = NoiseModel::additive(QSpectrum::power_law(s8(), 0.05, 4.0));
    SolverConfig cfg;
    cfg.dt = 5e-3;
    cfg.t_end = 10.0;
    cfg.record_every = 10;
    SpectralField u0 = rnd(3);
    TightnessReport rep = tightness_diagnostic(u0, p, model, 8, cfg, 17);
    CHECK(rep.holds);
    CHECK(rep.time_avg_v2 <= rep.bound + 2.0 * rep.se);

    // zero noise: reduces to the dissipation bound ||u0||^2 / (2 mu T)
    TightnessReport det = tightness_diagnostic(u0, p, NoiseModel::none(), 2, cfg, 17);
    CHECK(det.holds);
    CHECK(det.bound == doctest::Approx(h_norm_sq(u0) / (2.0 * p.mu * cfg.t_end)).epsilon(1e-12));

    PhysicsParams bad = p;
    bad.mu = 0.01;  // mu <= K/(2 lambda_1)
    NoiseModel strong = NoiseModel::additive(QSpectrum::power_law(s8(), 1.0, 4.0));
    CHECK_THROWS_AS(tightness_diagnostic(u0, bad, strong, 2, cfg, 17), ConditionNotMet);
}

TEST_CASE("mixing: common-noise identical data gives zero discrepancy") {
    PhysicsParams p;
    p.mu = 2.0;
    p.beta = 0.5;
    p.r = 5.0;
    NoiseModel model = NoiseModel::scalar_stationary(0.5, SpectralField(s8()));
    auto obs = default_observables(s8(), p.r);
    SolverConfig cfg;
    cfg.dt = 5e-3;
    cfg.t_end = 1.0;
    SpectralField u0 = rnd(4);
    MixingReport rep = mixing_test(p, model, u0, u0, obs, 4, cfg, 23);
    for (const auto& e : rep.entries) {
        CHECK(e.discrepancy == 0.0);
        CHECK(e.under_envelope);
    }
}

TEST_CASE("mixing: far-apart data lands under the exponential envelope") {
    PhysicsParams p;
    p.mu = 2.0;
    p.beta = 0.5;
    p.r = 5.0;
    NoiseModel model = NoiseModel::scalar_stationary(0.5, SpectralField(s8()));
    auto obs = default_observables(s8(), p.r);
    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 3.0;
    SpectralField u0 = rnd(5, 0.5);
    SpectralField v0 = rnd(6, 0.25);
    MixingReport rep = mixing_test(p, model, u0, v0, obs, 8, cfg, 29);
    CHECK(rep.blowups == 0);
    for (const auto& e : rep.entries) {
        CAPTURE(e.name);
        CHECK(e.under_envelope);
    }
    CHECK_THROWS_AS(
        [&] {
            PhysicsParams bad = p;
            bad.mu = 0.05;
            return mixing_test(bad, model, u0, v0, obs, 2, cfg, 29);
        }(),
        ConditionNotMet);
}

TEST_CASE("ergodic consistency: one long path agrees with the ensemble at T") {
    PhysicsParams p;
    p.mu = 2.0;
    p.beta = 0.5;
    p.r = 5.0;
    // additive noise: an invariant measure with nontrivial spread
    NoiseModel model = NoiseModel::additive(QSpectrum::power_law(s8(), 0.05, 4.0));
    auto all = default_observables(s8(), p.r);
    std::vector<Observable> obs = {all[0]};  // h2
    for (const auto& o : all)
        if (o.name.rfind("tanh", 0) == 0) obs.push_back(o);

    SolverConfig long_cfg;
    long_cfg.dt = 5e-3;
    long_cfg.t_end = 60.0;
    long_cfg.record_every = 4;
    LongRun lr = run_observed(p, model, long_cfg, SpectralField(s8()), 0, obs);
    REQUIRE(lr.rec.status == RunStatus::Ok);
    TimeAverageReport ta = time_average(lr.names, lr.series, lr.times, 0.2);

    SolverConfig ens_cfg;
    ens_cfg.dt = 5e-3;
    ens_cfg.t_end = 5.0;  // burn to near-stationarity per path
    ens_cfg.record_every = 1000;
    const int paths = 24;
    std::vector<std::vector<double>> finals(obs.size(), std::vector<double>(paths));
    parallel_for(paths, [&](int i) {
        GaussianStream gs(5150, static_cast<std::uint32_t>(i + 1), StreamPurpose::Noise);
        TrajectoryRecord rec = simulate(SpectralField(s8()), p, model, ens_cfg, gs);
        for (std::size_t j = 0; j < obs.size(); ++j)
            finals[j][i] = obs[j].eval(rec.final_field);
    });
    for (std::size_t j = 0; j < obs.size(); ++j) {
        MeanSe ens = mean_se(finals[j]);
        double se = std::sqrt(ens.se * ens.se + ta.entries[j].se * ta.entries[j].se);
        CAPTURE(obs[j].name);
        CHECK(std::abs(ens.mean - ta.entries[j].average) <= 3.0 * se);
    }
}
