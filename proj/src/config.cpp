#include "scbf/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace scbf {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct Parser {
    RunConfig cfg;
    std::vector<ConfigError> errors;

    void fail(const std::string& key, int line, const std::string& reason) {
        errors.push_back({key, line, reason});
    }

    bool to_double(const std::string& key, int line, const std::string& v, double& out) {
        char* end = nullptr;
        out = std::strtod(v.c_str(), &end);
        if (end == v.c_str() || *end != '\0') {
            fail(key, line, "not a number: '" + v + "'");
            return false;
        }
        return true;
    }

    bool to_int(const std::string& key, int line, const std::string& v, int& out) {
        char* end = nullptr;
        long val = std::strtol(v.c_str(), &end, 10);
        if (end == v.c_str() || *end != '\0') {
            fail(key, line, "not an integer: '" + v + "'");
            return false;
        }
        out = static_cast<int>(val);
        return true;
    }

    bool to_u64(const std::string& key, int line, const std::string& v, std::uint64_t& out) {
        char* end = nullptr;
        unsigned long long val = std::strtoull(v.c_str(), &end, 10);
        if (end == v.c_str() || *end != '\0') {
            fail(key, line, "not an unsigned integer: '" + v + "'");
            return false;
        }
        out = val;
        return true;
    }

    void assign(const std::string& sec, const std::string& key, const std::string& val,
                int line) {
        const std::string full = sec + "." + key;
        if (sec == "run") {
            if (key == "experiment") {
                static const char* known[] = {"simulate", "stationary", "stability",
                                              "stabilize", "invariant", "verify", "oracle"};
                bool ok = false;
                for (const char* k : known) ok = ok || val == k;
                if (!ok) { fail(full, line, "unknown experiment '" + val + "'"); return; }
                cfg.experiment = val;
            } else if (key == "out_dir") cfg.out_dir = val;
            else if (key == "seed") to_u64(full, line, val, cfg.seed);
            else if (key == "paths") to_int(full, line, val, cfg.paths);
            else if (key == "trials") to_int(full, line, val, cfg.trials);
            else fail(full, line, "unknown key");
        } else if (sec == "space") {
            if (key == "dim") to_int(full, line, val, cfg.dim);
            else if (key == "n_modes") to_int(full, line, val, cfg.n_modes);
            else if (key == "padding") to_double(full, line, val, cfg.padding);
            else fail(full, line, "unknown key");
        } else if (sec == "physics") {
            if (key == "mu") to_double(full, line, val, cfg.mu);
            else if (key == "beta") to_double(full, line, val, cfg.beta);
            else if (key == "r") to_double(full, line, val, cfg.r);
            else if (key == "r_mode") {
                if (val != "guaranteed" && val != "best_effort")
                    fail(full, line, "r_mode must be guaranteed|best_effort");
                else cfg.r_mode = val;
            } else if (key == "forcing") cfg.forcing = val;
            else fail(full, line, "unknown key");
        } else if (sec == "noise") {
            if (key == "variant") {
                static const char* known[] = {"none", "additive", "scalar_stationary",
                                              "linear_diagonal"};
                bool ok = false;
                for (const char* k : known) ok = ok || val == k;
                if (!ok) { fail(full, line, "unknown noise variant '" + val + "'"); return; }
                cfg.noise_variant = val;
            } else if (key == "trace") to_double(full, line, val, cfg.trace);
            else if (key == "gamma") to_double(full, line, val, cfg.gamma);
            else if (key == "sigma") to_double(full, line, val, cfg.sigma);
            else if (key == "sigma_decay") to_double(full, line, val, cfg.sigma_decay);
            else if (key == "u_star") cfg.u_star = val;
            else fail(full, line, "unknown key");
        } else if (sec == "solver") {
            if (key == "dt") to_double(full, line, val, cfg.dt);
            else if (key == "t_end") to_double(full, line, val, cfg.t_end);
            else if (key == "scheme") {
                if (val != "exponential_em" && val != "semi_implicit_em")
                    fail(full, line, "scheme must be exponential_em|semi_implicit_em");
                else cfg.scheme = val;
            } else if (key == "record_every") to_int(full, line, val, cfg.record_every);
            else if (key == "snapshot_every") to_int(full, line, val, cfg.snapshot_every);
            else if (key == "clip_threshold") to_double(full, line, val, cfg.clip_threshold);
            else fail(full, line, "unknown key");
        } else if (sec == "experiment") {
            if (key == "burn_frac") to_double(full, line, val, cfg.burn_frac);
            else if (key == "u0") cfg.u0 = val;
            else if (key == "u0_alt") cfg.u0_alt = val;
            else if (key == "tol") to_double(full, line, val, cfg.tol);
            else if (key == "max_iter") to_int(full, line, val, cfg.max_iter);
            else fail(full, line, "unknown key");
        } else {
            fail(sec, line, "unknown section");
        }
    }

    void validate() {
        if (cfg.dim != 2 && cfg.dim != 3) fail("space.dim", 0, "dim must be 2 or 3");
        if (cfg.n_modes < 4 || (cfg.n_modes & (cfg.n_modes - 1)) != 0)
            fail("space.n_modes", 0, "n_modes must be a power of two >= 4");
        if (cfg.padding < 1.5) fail("space.padding", 0, "padding must be >= 1.5");
        if (!(cfg.mu > 0)) fail("physics.mu", 0, "mu must be > 0");
        if (!(cfg.beta > 0)) fail("physics.beta", 0, "beta must be > 0");
        if (!(cfg.r >= 1)) fail("physics.r", 0, "r must be >= 1");
        if (cfg.r_mode == "guaranteed") {
            double rr = std::round(cfg.r);
            bool supported = std::abs(cfg.r - rr) < 1e-12 &&
                             (rr == 3 || rr == 5 || rr == 7 || rr == 9);
            if (!supported)
                fail("physics.r", 0,
                     "guaranteed mode supports r in {3,5,7,9} (exact dealiasing); use "
                     "r_mode = best_effort for other exponents");
        } else if (cfg.r_mode == "best_effort") {
            cfg.warnings.push_back(
                "physics.r_mode = best_effort: nonlinear dealiasing is approximate (4x grid), "
                "inequality checks carry quadrature error");
        }
        if (!(cfg.dt > 0)) fail("solver.dt", 0, "dt must be > 0");
        if (!(cfg.t_end >= cfg.dt)) fail("solver.t_end", 0, "t_end must be >= dt");
        if (cfg.record_every < 1) fail("solver.record_every", 0, "record_every must be >= 1");
        if (cfg.snapshot_every < 0) fail("solver.snapshot_every", 0, "must be >= 0");
        if (!(cfg.clip_threshold > 0)) fail("solver.clip_threshold", 0, "must be > 0");
        if (cfg.paths < 1) fail("run.paths", 0, "paths must be >= 1");
        if (cfg.trials < 1) fail("run.trials", 0, "trials must be >= 1");
        if (cfg.gamma != 0.0 && cfg.gamma <= cfg.dim)
            fail("noise.gamma", 0, "gamma must exceed dim (trace class) or be 0 for default");
        if (cfg.r == 3.0 && 2.0 * cfg.beta * cfg.mu < 1.0)
            cfg.warnings.push_back(
                "physics: r = 3 with 2*beta*mu < 1; monotonicity-based guarantees unavailable");
    }
};

}  // namespace

ConfigException::ConfigException(std::vector<ConfigError> errors)
    : std::runtime_error([&errors] {
          std::string msg = "config errors:";
          for (const auto& e : errors) {
              msg += "\n  [" + e.key + "]";
              if (e.line > 0) msg += " line " + std::to_string(e.line);
              msg += ": " + e.reason;
          }
          return msg;
      }()),
      errors_(std::move(errors)) {}

RunConfig parse_config(const std::string& text) {
    Parser p;
    std::istringstream is(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = raw;
        std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') {
                p.fail(s, line, "malformed section header");
                continue;
            }
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) {
            p.fail(s, line, "expected key = value");
            continue;
        }
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (section.empty()) {
            p.fail(key, line, "key before any [section]");
            continue;
        }
        if (key.empty() || val.empty()) {
            p.fail(key, line, "empty key or value");
            continue;
        }
        p.assign(section, key, val, line);
    }
    p.validate();
    if (!p.errors.empty()) throw ConfigException(std::move(p.errors));
    return p.cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    os.precision(17);
    os << "[run]\n";
    os << "experiment = " << c.experiment << "\n";
    if (!c.out_dir.empty()) os << "out_dir = " << c.out_dir << "\n";
    os << "seed = " << c.seed << "\n";
    os << "paths = " << c.paths << "\n";
    os << "trials = " << c.trials << "\n";
    os << "[space]\n";
    os << "dim = " << c.dim << "\n";
    os << "n_modes = " << c.n_modes << "\n";
    os << "padding = " << c.padding << "\n";
    os << "[physics]\n";
    os << "mu = " << c.mu << "\n";
    os << "beta = " << c.beta << "\n";
    os << "r = " << c.r << "\n";
    os << "r_mode = " << c.r_mode << "\n";
    os << "forcing = " << c.forcing << "\n";
    os << "[noise]\n";
    os << "variant = " << c.noise_variant << "\n";
    os << "trace = " << c.trace << "\n";
    os << "gamma = " << c.gamma << "\n";
    os << "sigma = " << c.sigma << "\n";
    os << "sigma_decay = " << c.sigma_decay << "\n";
    os << "u_star = " << c.u_star << "\n";
    os << "[solver]\n";
    os << "dt = " << c.dt << "\n";
    os << "t_end = " << c.t_end << "\n";
    os << "scheme = " << c.scheme << "\n";
    os << "record_every = " << c.record_every << "\n";
    os << "snapshot_every = " << c.snapshot_every << "\n";
    os << "clip_threshold = " << c.clip_threshold << "\n";
    os << "[experiment]\n";
    os << "burn_frac = " << c.burn_frac << "\n";
    os << "u0 = " << c.u0 << "\n";
    os << "u0_alt = " << c.u0_alt << "\n";
    os << "tol = " << c.tol << "\n";
    os << "max_iter = " << c.max_iter << "\n";
    return os.str();
}

}  // namespace scbf
