#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "scbf/experiments.hpp"
#include "scbf/manifest.hpp"
#include "scbf/snapshot.hpp"

#include <json.hpp>

using namespace scbf;
namespace fs = std::filesystem;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}
}  // namespace

TEST_CASE("minimal config parses with defaults filled") {
    RunConfig cfg = parse_config("[run]\nexperiment = simulate\n");
    CHECK(cfg.experiment == "simulate");
    CHECK(cfg.dim == 2);
    CHECK(cfg.n_modes == 16);
    CHECK(cfg.mu == 1.0);
    CHECK(cfg.dt == 1e-3);
    CHECK(cfg.warnings.empty());
}

TEST_CASE("unknown keys and sections are fatal with key and line") {
    try {
        parse_config("[run]\nexperiment = verify\nbogus = 1\n");
        FAIL("expected ConfigException");
    } catch (const ConfigException& e) {
        REQUIRE(e.errors().size() == 1);
        CHECK(e.errors()[0].key == "run.bogus");
        CHECK(e.errors()[0].line == 3);
    }
    CHECK_THROWS_AS(parse_config("[nope]\nx = 1\n"), ConfigException);
    CHECK_THROWS_AS(parse_config("[run]\nexperiment mangled\n"), ConfigException);
    CHECK_THROWS_AS(parse_config("orphan = 1\n"), ConfigException);
    CHECK_THROWS_AS(parse_config("[physics]\nmu = abc\n"), ConfigException);
}

TEST_CASE("guaranteed r support rejects off-menu exponents, best effort warns") {
    try {
        parse_config("[physics]\nr = 2.5\n");
        FAIL("expected ConfigException");
    } catch (const ConfigException& e) {
        bool mentions = false;
        for (const auto& err : e.errors())
            mentions = mentions || err.reason.find("{3,5,7,9}") != std::string::npos;
        CHECK(mentions);
    }
    RunConfig ok = parse_config("[physics]\nr = 2.5\nr_mode = best_effort\n");
    CHECK(ok.r == 2.5);
    CHECK(!ok.warnings.empty());

    RunConfig crit = parse_config("[physics]\nr = 3\nmu = 0.4\nbeta = 0.4\n");
    REQUIRE(!crit.warnings.empty());  // 2 beta mu < 1 surfaced before compute
}

TEST_CASE("serialize-parse round trip is a fixpoint") {
    std::string text =
        "[run]\nexperiment = stability\nseed = 9\npaths = 3\n"
        "[physics]\nmu = 2\nbeta = 0.5\nr = 5\n"
        "[noise]\nvariant = scalar_stationary\nsigma = 0.5\n"
        "[solver]\ndt = 0.002\nt_end = 1\n";
    RunConfig a = parse_config(text);
    std::string s1 = serialize_config(a);
    RunConfig b = parse_config(s1);
    std::string s2 = serialize_config(b);
    CHECK(s1 == s2);
    CHECK(b.mu == 2.0);
    CHECK(b.noise_variant == "scalar_stationary");
}

TEST_CASE("field spec grammar") {
    auto sp = SpectralSpace::make(2, 8);
    SpectralField z = build_field_spec("zero", sp, 1, 0);
    CHECK(h_norm_sq(z) == 0.0);
    SpectralField sh = build_field_spec("shear:1,0:2.0", sp, 1, 0);
    CHECK(h_norm_sq(sh) > 0.0);
    SpectralField r1 = build_field_spec("random:3:0.5", sp, 42, 7);
    SpectralField r2 = build_field_spec("random:3:0.5", sp, 42, 7);
    CHECK(h_norm_sq(r1 - r2) == 0.0);  // deterministic in (seed, tag)
    save_snapshot(r1, "/tmp/scbf_cfg_field.scbf");
    SpectralField r3 = build_field_spec("snapshot:/tmp/scbf_cfg_field.scbf", sp, 1, 0);
    CHECK(h_norm_sq(r3 - r1) == 0.0);
    CHECK_THROWS(build_field_spec("what:1", sp, 1, 0));
}

TEST_CASE("verify experiment runs, writes a complete manifest, exits 0") {
    RunConfig cfg;
    cfg.experiment = "verify";
    cfg.trials = 5;
    cfg.seed = 31;
    cfg.out_dir = "/tmp/scbf_cfg_verify";
    fs::remove_all(cfg.out_dir);
    int code = run_experiment(cfg);
    CHECK(code == 0);
    auto man = nlohmann::json::parse(slurp(cfg.out_dir + "/manifest.json"));
    CHECK(man.contains("config_hash"));
    REQUIRE(man["outputs"].size() >= 1);
    for (const auto& out : man["outputs"]) {
        std::string path = out["path"];
        CHECK(fs::exists(path));
        char hex[32];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(fnv1a64_file(path)));
        CHECK(std::string(hex) == out["fnv1a64"]);
    }
}

TEST_CASE("simulate reruns with one seed are byte-identical") {
    RunConfig cfg;
    cfg.experiment = "simulate";
    cfg.seed = 77;
    cfg.n_modes = 8;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.record_every = 10;
    cfg.noise_variant = "additive";
    cfg.trace = 0.1;
    cfg.u0 = "random:3:0.3";
    cfg.out_dir = "/tmp/scbf_cfg_sim_a";
    fs::remove_all(cfg.out_dir);
    REQUIRE(run_experiment(cfg) == 0);
    RunConfig cfg2 = cfg;
    cfg2.out_dir = "/tmp/scbf_cfg_sim_b";
    fs::remove_all(cfg2.out_dir);
    REQUIRE(run_experiment(cfg2) == 0);
    CHECK(slurp(cfg.out_dir + "/trajectory.csv") == slurp(cfg2.out_dir + "/trajectory.csv"));
    CHECK(slurp(cfg.out_dir + "/final.scbf") == slurp(cfg2.out_dir + "/final.scbf"));
}

TEST_CASE("stability run outside the theorem regime exits with code 2") {
    RunConfig cfg;
    cfg.experiment = "stability";
    cfg.n_modes = 8;
    cfg.mu = 0.05;  // mu lambda_1 <= 2 eta + L
    cfg.beta = 1.0;
    cfg.r = 5.0;
    cfg.noise_variant = "scalar_stationary";
    cfg.sigma = 0.5;
    cfg.paths = 2;
    cfg.dt = 1e-2;
    cfg.t_end = 0.1;
    cfg.out_dir = "/tmp/scbf_cfg_badregime";
    fs::remove_all(cfg.out_dir);
    CHECK(run_experiment(cfg) == 2);
    CHECK(fs::exists(cfg.out_dir + "/error.json"));
}

TEST_CASE("missing output directory is created") {
    RunConfig cfg;
    cfg.experiment = "oracle";
    cfg.n_modes = 8;
    cfg.trials = 2;
    cfg.out_dir = "/tmp/scbf_cfg_nested/deep/dir";
    fs::remove_all("/tmp/scbf_cfg_nested");
    CHECK(run_experiment(cfg) == 0);
    CHECK(fs::exists(cfg.out_dir + "/oracle.json"));
}
