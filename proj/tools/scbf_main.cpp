#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "scbf/experiments.hpp"

// scbf <subcommand> --config <path> [--seed N] [--out DIR] [--dt X] [--paths M]
// Flag overrides take precedence over config values. Exit codes: 0 pass,
// 1 verdict failure, 2 usage/config error, 3 numerical failure.
int main(int argc, char** argv) {
    CLI::App app{"stochastic convective Brinkman-Forchheimer laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir;
    double dt = 0.0;
    int paths = 0;

    const char* names[] = {"simulate", "stationary", "stability", "stabilize",
                           "invariant", "verify", "oracle"};
    for (const char* n : names) {
        CLI::App* sub = app.add_subcommand(n);
        sub->add_option("--config", config_path, "run configuration file");
        sub->add_option("--seed", seed, "master seed override")->each([&](const std::string&) {
            seed_set = true;
        });
        sub->add_option("--out", out_dir, "output directory override");
        sub->add_option("--dt", dt, "time step override");
        sub->add_option("--paths", paths, "ensemble size override");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        scbf::RunConfig cfg;
        if (!config_path.empty()) cfg = scbf::parse_config_file(config_path);
        cfg.experiment = app.get_subcommands().front()->get_name();
        if (seed_set) cfg.seed = seed;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (dt > 0.0) cfg.dt = dt;
        if (paths > 0) cfg.paths = paths;
        for (const auto& w : cfg.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
        return scbf::run_experiment(cfg);
    } catch (const scbf::ConfigException& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
