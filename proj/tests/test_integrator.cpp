#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scbf/experiments.hpp"
#include "scbf/integrator.hpp"

using namespace scbf;

namespace {
SpacePtr s16() {
    static SpacePtr sp = SpectralSpace::make(2, 16);
    return sp;
}
SpectralField rnd(std::uint32_t tag, double amp = 1.0) {
    RandomFieldLaw law;
    law.seed = 141421;
    law.amplitude = amp;
    return random_field(s16(), law, tag);
}
double hnorm(const SpectralField& u) { return std::sqrt(h_norm_sq(u)); }

WienerIncrement no_noise() { return WienerIncrement{}; }
}  // namespace

TEST_CASE("solver config validation") {
    SolverConfig c;
    c.dt = 1e-3;
    c.t_end = 1.0;
    CHECK(c.n_steps() == 1000);
    c.t_end = 1.0005;  // not a multiple of dt
    CHECK_THROWS(c.validate());
    c.t_end = 0.5e-3;  // dt > t_end
    CHECK_THROWS(c.validate());
    c = SolverConfig{};
    c.record_every = 0;
    CHECK_THROWS(c.validate());
}

TEST_CASE("linear stokes flow is integrated exactly by the exponential factor") {
    PhysicsParams p;
    p.mu = 0.9;
    p.beta = 0.0;  // C off
    p.r = 3.0;
    SolverConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.1;
    // shear mode: B vanishes identically, so the flow is pure heat decay
    SpectralField u = shear_mode(s16(), 2, 1, 0, 1.0);
    NoiseModel off = NoiseModel::none();
    for (int n = 0; n < 10; ++n) {
        StepResult res = step_once(u, n * cfg.dt, p, off, cfg, no_noise());
        REQUIRE(res.status == RunStatus::Ok);
        u = res.u;
    }
    SpectralField exact = std::exp(-0.9 * 5.0 * 0.1) * shear_mode(s16(), 2, 1, 0, 1.0);
    CHECK(hnorm(u - exact) <= 1e-13 * hnorm(exact));
}

TEST_CASE("zero data, zero forcing, zero noise stays zero") {
    PhysicsParams p;
    SolverConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.2;
    TrajectoryRecord rec = simulate(SpectralField(s16()), p, NoiseModel::none(), cfg,
                                    GaussianStream(1, 0, StreamPurpose::Noise));
    CHECK(rec.status == RunStatus::Ok);
    for (double h : rec.h2) CHECK(h == 0.0);
}

TEST_CASE("deterministic richardson: two half-steps shrink the defect ~4x") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 5.0;
    NoiseModel off = NoiseModel::none();
    SpectralField u0 = rnd(1, 0.15);

    auto defect = [&](double dt) {
        SolverConfig big;
        big.dt = dt;
        big.t_end = dt;
        SolverConfig half;
        half.dt = dt / 2;
        half.t_end = dt;
        StepResult one = step_once(u0, 0.0, p, off, big, no_noise());
        StepResult h1 = step_once(u0, 0.0, p, off, half, no_noise());
        StepResult h2 = step_once(h1.u, dt / 2, p, off, half, no_noise());
        return hnorm(one.u - h2.u);
    };
    double d1 = defect(2e-2);
    double d2 = defect(1e-2);
    CHECK(d1 / d2 >= 3.0);
    CHECK(d1 / d2 <= 5.5);
}

TEST_CASE("pure decay run: ||u||_H^2 monotone nonincreasing without noise") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 5.0;
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    cfg.record_every = 10;
    TrajectoryRecord rec = simulate(rnd(2), p, NoiseModel::none(), cfg,
                                    GaussianStream(7, 0, StreamPurpose::Noise));
    CHECK(rec.status == RunStatus::Ok);
    for (std::size_t i = 1; i < rec.h2.size(); ++i) CHECK(rec.h2[i] <= rec.h2[i - 1] * (1 + 1e-13));
    // structure preservation along the path
    CHECK(rec.final_field.divergence_defect() <= 1e-12 * hnorm(rec.final_field));
    CHECK(rec.final_field.hermitian_defect() <= 1e-13);
}

TEST_CASE("linear-only energy balance: residual is pure trapezoid error") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 0.0;
    p.r = 3.0;
    NoiseModel off = NoiseModel::none();
    SpectralField u0 = shear_mode(s16(), 1, 0, 0, 1.0);

    auto max_resid = [&](double dt) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.25;
        cfg.record_every = 5;
        TrajectoryRecord rec = simulate(u0, p, off, cfg, GaussianStream(1, 0, StreamPurpose::Noise));
        double worst = 0.0;
        for (double v : energy_residual(rec, p)) worst = std::max(worst, std::abs(v));
        return worst;
    };
    double r1 = max_resid(2.5e-3);
    double r2 = max_resid(1.25e-3);
    CHECK(r1 <= 1e-5 * h_norm_sq(u0));
    CHECK(r1 / r2 >= 3.0);  // trapezoid: O(dt^2)
}

TEST_CASE("nonlinear refinement: residual drops by >= 1.8 per halving") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 5.0;
    // strong enough data that the O(dt) drift defect dominates the balance
    SpectralField u0 = rnd(3, 0.6);
    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 0.25;
    cfg.record_every = 5;
    RefinementStudy det = energy_refinement_study(u0, p, NoiseModel::none(), cfg, 11);
    CHECK(det.ratio >= 1.8);
    NoiseModel add = NoiseModel::additive(QSpectrum::power_law(s16(), 0.1, 4.0));
    RefinementStudy sto = energy_refinement_study(u0, p, add, cfg, 11);
    CHECK(sto.ratio >= 1.8);
}

TEST_CASE("ito isometry at the first step: E||u(dt)||^2 matches the analytic value") {
    auto sp = s16();
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 5.0;
    QSpectrum q = QSpectrum::power_law(sp, 0.1, 4.0);
    NoiseModel model = NoiseModel::additive(q);
    SolverConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 1e-2;
    // analytic: sum_k,p e^{-2 mu lambda dt} q_{k,p} dt
    double expect = 0.0;
    for (int m = 0; m < sp->n_retained(); ++m)
        expect += std::exp(-2.0 * p.mu * sp->lambda(m) * cfg.dt) * q.at(m, 0) * cfg.dt;
    const int paths = 4000;
    double acc = 0.0;
    for (int i = 0; i < paths; ++i) {
        GaussianStream gs(2718, static_cast<std::uint32_t>(i), StreamPurpose::Noise);
        WienerIncrement inc = sample_increment(model, sp, cfg.dt, gs, 0);
        StepResult res = step_once(SpectralField(sp), 0.0, p, model, cfg, inc);
        acc += h_norm_sq(res.u);
    }
    double mc = acc / paths;
    CHECK(mc == doctest::Approx(expect).epsilon(0.05));
    CHECK(mc <= q.trace * cfg.dt * 1.05);  // <= Tr Q * t (1 + o(1))
}

TEST_CASE("seeded repeat runs are bit-identical") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 5.0;
    NoiseModel model = NoiseModel::additive(QSpectrum::power_law(s16(), 0.1, 4.0));
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    SpectralField u0 = rnd(4);
    TrajectoryRecord a = simulate(u0, p, model, cfg, GaussianStream(555, 3, StreamPurpose::Noise));
    TrajectoryRecord b = simulate(u0, p, model, cfg, GaussianStream(555, 3, StreamPurpose::Noise));
    REQUIRE(a.t.size() == b.t.size());
    for (std::size_t i = 0; i < a.t.size(); ++i) {
        CHECK(a.h2[i] == b.h2[i]);
        CHECK(a.m_acc[i] == b.m_acc[i]);
    }
    CHECK(hnorm(a.final_field - b.final_field) == 0.0);
}

TEST_CASE("stochastic ensemble: mean residual is within 2 SE of zero") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 5.0;
    NoiseModel model = NoiseModel::additive(QSpectrum::power_law(s16(), 0.1, 4.0));
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.2;
    cfg.record_every = 200;
    SpectralField u0(s16());  // noise builds the field from rest
    const int paths = 24;
    std::vector<double> final_r(paths);
    parallel_for(paths, [&](int i) {
        TrajectoryRecord rec = simulate(u0, p, model, cfg,
                                        GaussianStream(808, static_cast<std::uint32_t>(i),
                                                       StreamPurpose::Noise));
        final_r[i] = energy_residual(rec, p).back();
    });
    MeanSe ms = mean_se(final_r);
    CHECK(std::abs(ms.mean) <= 2.0 * ms.se);
}

TEST_CASE("blow-up is reported, not thrown") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 5.0;
    SolverConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 0.5;
    cfg.clip_threshold = 1.0;  // guard below the initial norm
    SpectralField u0 = rnd(6, 5.0);
    TrajectoryRecord rec = simulate(u0, p, NoiseModel::none(), cfg,
                                    GaussianStream(1, 0, StreamPurpose::Noise));
    CHECK(rec.status == RunStatus::BlowUp);
    CHECK(rec.fail_time == 0.0);
}

TEST_CASE("semi-implicit scheme preserves forced stationary states exactly") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 5.0;
    SpectralField u_inf = rnd(7, 0.5);
    p.forcing = combined_G(u_inf, p);  // f = G(u_inf): u_inf is steady
    SolverConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 0.1;
    cfg.scheme = Scheme::SemiImplicitEM;
    TrajectoryRecord rec = simulate(u_inf, p, NoiseModel::none(), cfg,
                                    GaussianStream(1, 0, StreamPurpose::Noise));
    CHECK(rec.status == RunStatus::Ok);
    CHECK(hnorm(rec.final_field - u_inf) <= 1e-11 * hnorm(u_inf));
}

TEST_CASE("coupled runs: identical data gives the identically-zero deviation") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 5.0;
    NoiseModel model = NoiseModel::scalar_stationary(0.5, SpectralField(s16()));
    SolverConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 0.2;
    SpectralField u0 = rnd(8);
    CoupledRecord rec = simulate_coupled(u0, u0, p, model, cfg,
                                         GaussianStream(3, 0, StreamPurpose::Noise));
    for (double d : rec.dev2) CHECK(d == 0.0);
    // swapping the initial data swaps the roles exactly
    SpectralField v0 = rnd(9);
    CoupledRecord ab = simulate_coupled(u0, v0, p, model, cfg,
                                        GaussianStream(4, 0, StreamPurpose::Noise));
    CoupledRecord ba = simulate_coupled(v0, u0, p, model, cfg,
                                        GaussianStream(4, 0, StreamPurpose::Noise));
    CHECK(hnorm(ab.final_u - ba.final_v) == 0.0);
    CHECK(hnorm(ab.final_v - ba.final_u) == 0.0);
}

TEST_CASE("a-priori energy bound holds with a wide margin") {
    PhysicsParams p;
    p.mu = 1.0;
    p.beta = 1.0;
    p.r = 5.0;
    NoiseModel model = NoiseModel::additive(QSpectrum::power_law(s16(), 0.1, 4.0));
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    cfg.record_every = 50;
    AprioriReport rep = apriori_bound_check(rnd(10, 0.1), p, model, cfg, 16, 99);
    CHECK(rep.blowups == 0);
    CHECK(rep.holds);
    CHECK(rep.lhs_mc < rep.rhs_bound);  // loose bound: strict inequality expected
    double expect_rhs = (2.0 * h_norm_sq(rnd(10, 0.1)) + 14.0 * model.growth_K() * cfg.t_end) *
                        std::exp(28.0 * model.growth_K() * cfg.t_end);
    CHECK(rep.rhs_bound == doctest::Approx(expect_rhs).epsilon(1e-12));

    // zero-noise limit: degrades to the pathwise dissipation bound
    AprioriReport det = apriori_bound_check(rnd(10, 0.1), p, NoiseModel::none(), cfg, 2, 99);
    CHECK(det.holds);
}
