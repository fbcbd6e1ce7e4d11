#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace scbf {

struct ConfigError {
    std::string key;
    int line = 0;
    std::string reason;
};

class ConfigException : public std::runtime_error {
  public:
    explicit ConfigException(std::vector<ConfigError> errors);
    const std::vector<ConfigError>& errors() const { return errors_; }

  private:
    std::vector<ConfigError> errors_;
};

// Parsed run configuration. Sections and keys are documented in the README;
// parsing is strict: unknown sections/keys are fatal with (key, line, reason).
struct RunConfig {
    // [run]
    std::string experiment = "verify";
    std::string out_dir;
    std::uint64_t seed = 1;
    int paths = 8;
    int trials = 200;
    // [space]
    int dim = 2;
    int n_modes = 16;
    double padding = 1.5;
    // [physics]
    double mu = 1.0;
    double beta = 1.0;
    double r = 3.0;
    std::string r_mode = "guaranteed";  // guaranteed: r in {3,5,7,9}; best_effort: any r >= 1
    std::string forcing = "none";       // none | shear:kx,ky[,kz]:amp | random:decay:amp | snapshot:PATH
    // [noise]
    std::string noise_variant = "none";  // none | additive | scalar_stationary | linear_diagonal
    double trace = 0.1;
    double gamma = 0.0;  // 0 = default dim + 2
    double sigma = 0.5;
    double sigma_decay = 0.0;
    std::string u_star = "zero";  // zero | stationary | snapshot:PATH
    // [solver]
    double dt = 1e-3;
    double t_end = 1.0;
    std::string scheme = "exponential_em";  // exponential_em | semi_implicit_em
    int record_every = 10;
    int snapshot_every = 0;  // field snapshots every N records (0 = final only)
    double clip_threshold = 1e6;
    // [experiment]
    double burn_frac = 0.2;
    std::string u0 = "random:3:1";
    std::string u0_alt = "random:3:0.5";
    double tol = 1e-8;
    int max_iter = 10000;

    std::vector<std::string> warnings;  // non-fatal regime notes
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);
// canonical normalized form; serialize(parse(x)) is a fixpoint
std::string serialize_config(const RunConfig& cfg);

}  // namespace scbf
