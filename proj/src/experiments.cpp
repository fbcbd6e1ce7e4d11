#include "scbf/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scbf/battery.hpp"
#include "scbf/manifest.hpp"
#include "scbf/oracles.hpp"
#include "scbf/snapshot.hpp"

namespace scbf {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::string resolve_out_dir(const RunConfig& cfg) {
    if (!cfg.out_dir.empty()) return cfg.out_dir;
    std::string root = "runs";
    if (const char* env = std::getenv("SCBF_OUT_ROOT")) root = env;
    return root + "/" + cfg.experiment;
}

void csv_cell(std::FILE* f, double v, bool last = false) {
    std::fprintf(f, "%.17g%c", v, last ? '\n' : ',');
}

const char* status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Ok: return "ok";
        case RunStatus::BlowUp: return "blowup";
        case RunStatus::NonFinite: return "nonfinite";
    }
    return "?";
}

WienerIncrement combine_increments(const WienerIncrement& a, const WienerIncrement& b) {
    WienerIncrement out;
    out.dt = a.dt + b.dt;
    out.scalar = a.scalar + b.scalar;
    if (!a.field.empty()) {
        out.field = a.field;
        out.field += b.field;
    }
    out.raw = a.raw;
    out.raw.insert(out.raw.end(), b.raw.begin(), b.raw.end());
    return out;
}

void write_rate_csv(const EnsembleStats& st, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fprintf(f, "t,mean_dev2,ci_half\n");
    for (std::size_t i = 0; i < st.times.size(); ++i) {
        csv_cell(f, st.times[i]);
        csv_cell(f, st.mean_dev2[i]);
        csv_cell(f, st.ci_half[i], true);
    }
    std::fclose(f);
}

json rate_report_json(const RateReport& rep) {
    json j;
    j["theoretical_rate"] = rep.theoretical_rate;
    j["fitted_rate"] = rep.fitted_rate;
    j["fit_ci"] = rep.fit_ci;
    j["fit_window"] = {rep.window_t0, rep.window_t1};
    j["verdict"] = verdict_name(rep.verdict);
    j["paths"] = rep.stats.paths;
    j["blowups"] = rep.blowups;
    return j;
}

}  // namespace

SpectralField build_field_spec(const std::string& spec, const SpacePtr& space,
                               std::uint64_t seed, std::uint32_t tag) {
    if (spec == "zero" || spec == "none") return SpectralField(space);
    auto parts = split(spec, ':');
    if (parts[0] == "random") {
        RandomFieldLaw law;
        law.seed = seed;
        if (parts.size() > 1) law.decay = std::atof(parts[1].c_str());
        if (parts.size() > 2) law.amplitude = std::atof(parts[2].c_str());
        if (parts.size() > 3) law.mode_cutoff = std::atoi(parts[3].c_str());
        return random_field(space, law, tag);
    }
    if (parts[0] == "shear") {
        if (parts.size() < 3) throw std::runtime_error("field spec: shear:kx,ky[,kz]:amp");
        auto kk = split(parts[1], ',');
        int kx = std::atoi(kk[0].c_str());
        int ky = kk.size() > 1 ? std::atoi(kk[1].c_str()) : 0;
        int kz = kk.size() > 2 ? std::atoi(kk[2].c_str()) : 0;
        return shear_mode(space, kx, ky, kz, std::atof(parts[2].c_str()));
    }
    if (parts[0] == "snapshot") {
        if (parts.size() < 2) throw std::runtime_error("field spec: snapshot:PATH");
        return load_snapshot(spec.substr(spec.find(':') + 1), space);
    }
    throw std::runtime_error("unknown field spec '" + spec + "'");
}

PhysicsParams build_physics(const RunConfig& cfg, const SpacePtr& space) {
    PhysicsParams p;
    p.mu = cfg.mu;
    p.beta = cfg.beta;
    p.r = cfg.r;
    if (cfg.forcing != "none" && cfg.forcing != "zero") {
        p.forcing = leray_project(build_field_spec(cfg.forcing, space, cfg.seed, 7001));
    }
    p.validate();
    return p;
}

NoiseModel build_noise(const RunConfig& cfg, const SpacePtr& space, const PhysicsParams& p) {
    if (cfg.noise_variant == "none") return NoiseModel::none();
    SpectralField u_star(space);
    if (cfg.u_star == "stationary") {
        SpectralField f = p.has_forcing() ? p.forcing : SpectralField(space);
        StationaryOptions so;
        so.tol = cfg.tol;
        so.max_iter = cfg.max_iter;
        StationaryResult sr = solve_stationary(f, p, so);
        if (!sr.converged)
            throw std::runtime_error("noise.u_star = stationary: solver did not converge");
        u_star = sr.u_star;
    } else if (cfg.u_star != "zero") {
        u_star = build_field_spec(cfg.u_star, space, cfg.seed, 7002);
    }
    double gamma = cfg.gamma > 0.0 ? cfg.gamma : cfg.dim + 2.0;
    if (cfg.noise_variant == "additive")
        return NoiseModel::additive(QSpectrum::power_law(space, cfg.trace, gamma));
    if (cfg.noise_variant == "scalar_stationary")
        return NoiseModel::scalar_stationary(cfg.sigma, std::move(u_star));
    // linear_diagonal: sigma_k = sigma |k|^{-sigma_decay}
    QSpectrum q = QSpectrum::power_law(space, cfg.trace, gamma);
    std::vector<double> sk(q.q.size());
    const int npol = space->n_polarizations();
    for (int m = 0; m < space->n_retained(); ++m) {
        double w = cfg.sigma * std::pow(space->lambda(m), -cfg.sigma_decay / 2.0);
        for (int pl = 0; pl < npol; ++pl) sk[static_cast<std::size_t>(m) * npol + pl] = w;
    }
    return NoiseModel::linear_diagonal(std::move(q), std::move(sk), std::move(u_star));
}

SolverConfig build_solver(const RunConfig& cfg) {
    SolverConfig sc;
    sc.dt = cfg.dt;
    sc.t_end = cfg.t_end;
    sc.scheme = cfg.scheme == "semi_implicit_em" ? Scheme::SemiImplicitEM
                                                 : Scheme::ExponentialEM;
    sc.record_every = cfg.record_every;
    sc.clip_threshold = cfg.clip_threshold;
    sc.validate();
    return sc;
}

void write_trajectory_csv(const TrajectoryRecord& rec, const PhysicsParams& p,
                          const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fprintf(f, "t,h_norm_sq,v_norm_sq,lr1_norm,M,HS,IV,IL,FW");
    if (rec.has_wiener) std::fprintf(f, ",W");
    if (rec.has_dev) std::fprintf(f, ",dev2");
    std::fprintf(f, ",R,status\n");
    std::vector<double> resid = energy_residual(rec, p);
    for (std::size_t i = 0; i < rec.t.size(); ++i) {
        csv_cell(f, rec.t[i]);
        csv_cell(f, rec.h2[i]);
        csv_cell(f, rec.v2[i]);
        csv_cell(f, rec.lr1[i]);
        csv_cell(f, rec.m_acc[i]);
        csv_cell(f, rec.hs_acc[i]);
        csv_cell(f, rec.iv[i]);
        csv_cell(f, rec.il[i]);
        csv_cell(f, rec.fw_acc[i]);
        if (rec.has_wiener) csv_cell(f, rec.wiener[i]);
        if (rec.has_dev) csv_cell(f, rec.dev2[i]);
        csv_cell(f, resid[i]);
        std::fprintf(f, "%s\n", status_name(rec.status));
    }
    std::fclose(f);
}

RefinementStudy energy_refinement_study(const SpectralField& u0, const PhysicsParams& p,
                                        const NoiseModel& model, const SolverConfig& coarse,
                                        std::uint64_t seed, std::uint32_t path_id) {
    SolverConfig fine = coarse;
    fine.dt = 0.5 * coarse.dt;
    GaussianStream gs(seed, path_id, StreamPurpose::Noise);
    SpacePtr space = u0.space_ptr();
    IncrementFn fine_fn = [&](std::uint64_t step, double, double dt) {
        return sample_increment(model, space, dt, gs, step);
    };
    IncrementFn coarse_fn = [&](std::uint64_t step, double, double dt) {
        double h = 0.5 * dt;
        WienerIncrement a = sample_increment(model, space, h, gs, 2 * step);
        WienerIncrement b = sample_increment(model, space, h, gs, 2 * step + 1);
        return combine_increments(a, b);
    };
    TrajectoryRecord rc = simulate(u0, p, model, coarse, coarse_fn);
    TrajectoryRecord rf = simulate(u0, p, model, fine, fine_fn);
    if (rc.status != RunStatus::Ok || rf.status != RunStatus::Ok)
        throw std::runtime_error("energy_refinement_study: run failed");
    RefinementStudy st;
    for (double v : energy_residual(rc, p)) st.max_r_coarse = std::max(st.max_r_coarse, std::abs(v));
    for (double v : energy_residual(rf, p)) st.max_r_fine = std::max(st.max_r_fine, std::abs(v));
    st.ratio = st.max_r_coarse / std::max(st.max_r_fine, 1e-300);
    return st;
}

namespace {

int exp_simulate(const RunConfig& cfg, RunManifest& man, const std::string& dir) {
    SpacePtr space = SpectralSpace::make(cfg.dim, cfg.n_modes, cfg.padding);
    PhysicsParams p = build_physics(cfg, space);
    NoiseModel noise = build_noise(cfg, space, p);
    SolverConfig sc = build_solver(cfg);
    SpectralField u0 = build_field_spec(cfg.u0, space, cfg.seed, 1);
    GaussianStream gs(cfg.seed, 0, StreamPurpose::Noise);
    SimOptions opts;
    if (!noise.u_star.empty()) opts.reference = &noise.u_star;
    int record_count = 0;
    std::vector<std::string> snaps;
    if (cfg.snapshot_every > 0) {
        opts.on_record = [&](double, const SpectralField& u) {
            if (record_count % cfg.snapshot_every == 0) {
                char name[64];
                std::snprintf(name, sizeof(name), "/snap_%06d.scbf", record_count);
                save_snapshot(u, dir + name);
                snaps.push_back(dir + name);
            }
            ++record_count;
        };
    }
    TrajectoryRecord rec = simulate(u0, p, noise, sc, gs, opts);
    for (const auto& s : snaps) man.add_output(s);
    write_trajectory_csv(rec, p, dir + "/trajectory.csv");
    man.add_output(dir + "/trajectory.csv");
    save_snapshot(rec.final_field, dir + "/final.scbf");
    man.add_output(dir + "/final.scbf");
    dump_snapshot_text(rec.final_field, dir + "/final.txt");
    man.add_output(dir + "/final.txt");
    return rec.status == RunStatus::Ok ? 0 : 3;
}

int exp_stationary(const RunConfig& cfg, RunManifest& man, const std::string& dir) {
    SpacePtr space = SpectralSpace::make(cfg.dim, cfg.n_modes, cfg.padding);
    PhysicsParams p = build_physics(cfg, space);
    SpectralField f = p.has_forcing() ? p.forcing : SpectralField(space);
    StationaryOptions so;
    so.tol = cfg.tol;
    so.max_iter = cfg.max_iter;
    StationaryResult res = solve_stationary(f, p, so);
    StationaryBound bound = stationary_bound_check(res, f, p);
    save_snapshot(res.u_star, dir + "/u_star.scbf");
    man.add_output(dir + "/u_star.scbf");
    json j;
    j["residual_dual_norm"] = res.residual_dual_norm;
    j["iterations"] = res.iterations;
    j["converged"] = res.converged;
    j["used_marching"] = res.used_marching;
    j["bound_lhs"] = bound.lhs;
    j["bound_rhs"] = bound.rhs;
    j["bound_holds"] = bound.holds;
    j["uniqueness_condition"] = uniqueness_condition(p);
    std::ofstream os(dir + "/stationary.json");
    os << j.dump(2) << "\n";
    os.close();
    man.add_output(dir + "/stationary.json");
    return (res.converged && bound.holds) ? 0 : 1;
}

int exp_stability(const RunConfig& cfg, RunManifest& man, const std::string& dir) {
    SpacePtr space = SpectralSpace::make(cfg.dim, cfg.n_modes, cfg.padding);
    PhysicsParams p = build_physics(cfg, space);
    NoiseModel noise = build_noise(cfg, space, p);
    SolverConfig sc = build_solver(cfg);
    SpectralField u_inf = noise.u_star.empty() ? SpectralField(space) : noise.u_star;

    RandomFieldLaw law;
    law.seed = cfg.seed;
    RateReport ms = ms_stability_experiment(p, noise, u_inf, law, cfg.paths, sc, cfg.seed,
                                            cfg.burn_frac);
    SpectralField u0 = build_field_spec(cfg.u0, space, cfg.seed, 11);
    SpectralField v0 = build_field_spec(cfg.u0_alt, space, cfg.seed, 12);
    RateReport contr = contraction_experiment(p, noise, u0, v0, cfg.paths, sc, cfg.seed,
                                              cfg.burn_frac);
    write_rate_csv(ms.stats, dir + "/ms_decay.csv");
    man.add_output(dir + "/ms_decay.csv");
    write_rate_csv(contr.stats, dir + "/contraction.csv");
    man.add_output(dir + "/contraction.csv");
    json j;
    j["mean_square"] = rate_report_json(ms);
    j["contraction"] = rate_report_json(contr);
    j["L"] = noise.lipschitz_L();
    std::ofstream os(dir + "/stability.json");
    os << j.dump(2) << "\n";
    os.close();
    man.add_output(dir + "/stability.json");
    bool ok = ms.verdict == Verdict::Satisfied && contr.verdict == Verdict::Satisfied;
    if (ms.blowups || contr.blowups) return 3;
    return ok ? 0 : 1;
}

int exp_stabilize(const RunConfig& cfg, RunManifest& man, const std::string& dir) {
    SpacePtr space = SpectralSpace::make(cfg.dim, cfg.n_modes, cfg.padding);
    PhysicsParams p = build_physics(cfg, space);
    RunConfig cfg2 = cfg;
    cfg2.noise_variant = "scalar_stationary";
    NoiseModel noise = build_noise(cfg2, space, p);
    SolverConfig sc = build_solver(cfg);
    const SpectralField& u_inf = noise.u_star;
    double zeta = zeta_rate(p, cfg.sigma);

    int checked = 0, violations = 0, blowups = 0;
    double sample_fraction = 0.0;
    for (int i = 0; i < cfg.paths; ++i) {
        GaussianStream gs(cfg.seed, static_cast<std::uint32_t>(i), StreamPurpose::Noise);
        SpectralField u0 = build_field_spec(cfg.u0, space, cfg.seed, 100 + i);
        SimOptions opts;
        opts.reference = &u_inf;
        TrajectoryRecord rec = simulate(u0, p, noise, sc, gs, opts);
        if (rec.status != RunStatus::Ok) {
            ++blowups;
            continue;
        }
        StabilizationReport rep = stabilization_pathwise_check(p, cfg.sigma, rec);
        checked += rep.checked;
        violations += rep.violations;
        if (i == 0) {
            write_trajectory_csv(rec, p, dir + "/stabilize_path0.csv");
            man.add_output(dir + "/stabilize_path0.csv");
            sample_fraction = rep.violation_fraction;
        }
    }
    double fraction = checked ? double(violations) / checked : 0.0;
    json j;
    j["zeta"] = zeta;
    j["sigma"] = cfg.sigma;
    j["checked"] = checked;
    j["violations"] = violations;
    j["violation_fraction"] = fraction;
    j["path0_fraction"] = sample_fraction;
    j["blowups"] = blowups;
    std::ofstream os(dir + "/stabilize.json");
    os << j.dump(2) << "\n";
    os.close();
    man.add_output(dir + "/stabilize.json");
    if (blowups) return 3;
    return fraction <= 0.01 ? 0 : 1;
}

int exp_invariant(const RunConfig& cfg, RunManifest& man, const std::string& dir) {
    SpacePtr space = SpectralSpace::make(cfg.dim, cfg.n_modes, cfg.padding);
    PhysicsParams p = build_physics(cfg, space);
    NoiseModel noise = build_noise(cfg, space, p);
    SolverConfig sc = build_solver(cfg);
    auto observables = default_observables(space, p.r);

    // one long path: running time averages
    SpectralField u0 = build_field_spec(cfg.u0, space, cfg.seed, 21);
    std::vector<std::vector<double>> series(observables.size());
    std::vector<double> times;
    SimOptions opts;
    opts.on_record = [&](double t, const SpectralField& u) {
        times.push_back(t);
        for (std::size_t j = 0; j < observables.size(); ++j)
            series[j].push_back(observables[j].eval(u));
    };
    GaussianStream gs(cfg.seed, 4000, StreamPurpose::Noise);
    TrajectoryRecord rec = simulate(u0, p, noise, sc, gs, opts);
    if (rec.status != RunStatus::Ok) return 3;
    TimeAverageReport ta = time_average(
        [&] {
            std::vector<std::string> names;
            for (const auto& o : observables) names.push_back(o.name);
            return names;
        }(),
        series, times, cfg.burn_frac);

    // running-average CSV
    {
        std::FILE* f = std::fopen((dir + "/running_averages.csv").c_str(), "w");
        std::fprintf(f, "t");
        for (const auto& o : observables) std::fprintf(f, ",%s", o.name.c_str());
        std::fprintf(f, "\n");
        std::vector<double> acc(observables.size(), 0.0);
        for (std::size_t i = 0; i < times.size(); ++i) {
            csv_cell(f, times[i]);
            for (std::size_t j = 0; j < observables.size(); ++j) {
                acc[j] += series[j][i];
                csv_cell(f, acc[j] / double(i + 1), j + 1 == observables.size());
            }
        }
        std::fclose(f);
        man.add_output(dir + "/running_averages.csv");
    }

    TightnessReport tight = tightness_diagnostic(u0, p, noise, cfg.paths, sc, cfg.seed + 1);
    SpectralField mu0 = build_field_spec(cfg.u0, space, cfg.seed, 22);
    SpectralField mv0 = build_field_spec(cfg.u0_alt, space, cfg.seed, 23);
    MixingReport mix = mixing_test(p, noise, mu0, mv0, observables, cfg.paths, sc, cfg.seed + 2);

    json j;
    j["burn_in"] = ta.burn_in;
    json averages = json::array();
    for (const auto& e : ta.entries)
        averages.push_back({{"name", e.name}, {"average", e.average}, {"se", e.se},
                            {"batches", e.batches}});
    j["time_averages"] = averages;
    j["tightness"] = {{"time_avg_v2", tight.time_avg_v2}, {"se", tight.se},
                      {"bound", tight.bound}, {"holds", tight.holds}};
    json mj = json::array();
    bool mix_ok = true;
    for (const auto& e : mix.entries) {
        mix_ok = mix_ok && e.under_envelope;
        mj.push_back({{"name", e.name}, {"discrepancy", e.discrepancy}, {"se", e.se},
                      {"lipschitz", e.lipschitz}, {"envelope", e.envelope},
                      {"under_envelope", e.under_envelope}});
    }
    j["mixing"] = {{"rate", mix.rate}, {"entries", mj}, {"blowups", mix.blowups}};
    std::ofstream os(dir + "/invariant.json");
    os << j.dump(2) << "\n";
    os.close();
    man.add_output(dir + "/invariant.json");
    if (mix.blowups) return 3;
    return (tight.holds && mix_ok) ? 0 : 1;
}

int exp_verify(const RunConfig& cfg, RunManifest& man, const std::string& dir) {
    auto reports = run_property_battery(cfg.seed, cfg.trials);
    json j = json::array();
    for (const auto& r : reports) {
        j.push_back({{"name", r.name}, {"trials", r.trials},
                     {"max_deviation", r.max_deviation}, {"tolerance", r.tolerance},
                     {"pass", r.pass}, {"skipped", r.skipped}, {"seed", r.seed},
                     {"note", r.note}});
    }
    std::ofstream os(dir + "/verify.json");
    os << j.dump(2) << "\n";
    os.close();
    man.add_output(dir + "/verify.json");
    return battery_all_pass(reports) ? 0 : 1;
}

int exp_oracle(const RunConfig& cfg, RunManifest& man, const std::string& dir) {
    SpacePtr s8 = SpectralSpace::make(cfg.dim, std::min(cfg.n_modes, 8));
    json j = json::array();
    bool all = true;
    for (int i = 0; i < cfg.trials; ++i) {
        RandomFieldLaw law;
        law.seed = cfg.seed;
        SpectralField u = random_field(s8, law, 2 * i);
        SpectralField v = random_field(s8, law, 2 * i + 1);
        double db = std::sqrt(h_norm_sq(convective_B(u) - convolution_oracle_B(u, u)) /
                              std::max(h_norm_sq(convolution_oracle_B(u, u)), 1e-300));
        double r = (i % 2 == 0) ? 3.0 : 5.0;
        double dc = std::sqrt(h_norm_sq(forchheimer_C(u, r) - pointwise_oracle_C(u, r)) /
                              std::max(h_norm_sq(pointwise_oracle_C(u, r)), 1e-300));
        double tb = std::abs(trilinear_b(u, v, v));
        bool ok = db <= 1e-10 && dc <= 1e-10;
        all = all && ok;
        j.push_back({{"trial", i}, {"b_oracle_rel", db}, {"c_oracle_rel", dc},
                     {"b_skew_abs", tb}, {"pass", ok}});
    }
    std::ofstream os(dir + "/oracle.json");
    os << j.dump(2) << "\n";
    os.close();
    man.add_output(dir + "/oracle.json");
    return all ? 0 : 1;
}

}  // namespace

int run_experiment(const RunConfig& cfg) {
    const std::string dir = resolve_out_dir(cfg);
    fs::create_directories(dir);
    RunManifest man(dir, serialize_config(cfg));
    int code;
    try {
        if (cfg.experiment == "simulate") code = exp_simulate(cfg, man, dir);
        else if (cfg.experiment == "stationary") code = exp_stationary(cfg, man, dir);
        else if (cfg.experiment == "stability") code = exp_stability(cfg, man, dir);
        else if (cfg.experiment == "stabilize") code = exp_stabilize(cfg, man, dir);
        else if (cfg.experiment == "invariant") code = exp_invariant(cfg, man, dir);
        else if (cfg.experiment == "verify") code = exp_verify(cfg, man, dir);
        else if (cfg.experiment == "oracle") code = exp_oracle(cfg, man, dir);
        else throw ConfigException({{"run.experiment", 0, "unknown experiment"}});
    } catch (const ConditionNotMet& e) {
        json err;
        err["error"] = "condition_not_met";
        err["detail"] = e.what();
        std::ofstream os(dir + "/error.json");
        os << err.dump(2) << "\n";
        std::fprintf(stderr, "%s\n", err.dump().c_str());
        return 2;
    }
    man.write();
    return code;
}

}  // namespace scbf
