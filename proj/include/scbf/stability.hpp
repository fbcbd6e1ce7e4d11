#pragma once

#include <stdexcept>

#include "scbf/integrator.hpp"
#include "scbf/ratefit.hpp"

namespace scbf {

// parameter regime outside a theorem's hypotheses
struct ConditionNotMet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Decay rates, all fed by the same eta_constant:
//   kappa = lambda_1 mu - 2 eta            (deterministic)
//   theta = lambda_1 mu - (2 eta + L)      (mean square)
//   zeta  = (sigma^2 + 2 mu lambda_1 - 2 eta)/2   (noise stabilization)
double kappa_rate(const PhysicsParams& p);
double theta_rate(const PhysicsParams& p, double lipschitz_L);
double zeta_rate(const PhysicsParams& p, double sigma);

enum class Verdict { Satisfied, Violated, Inconclusive };
const char* verdict_name(Verdict v);

struct EnsembleStats {
    std::vector<double> times;
    std::vector<double> mean_dev2;  // mean ||u - ref||_H^2 across paths
    std::vector<double> ci_half;    // 2 SE across paths
    int paths = 0;
};

// The theorems bound E||.||^2 above by an exponential, so the assertable
// statement is fitted decay >= theoretical rate - fit CI, never equality.
struct RateReport {
    double theoretical_rate = 0.0;
    double fitted_rate = 0.0;
    double fit_ci = 0.0;  // 2 x OLS slope standard error
    double window_t0 = 0.0, window_t1 = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    EnsembleStats stats;
    int blowups = 0;
};

// E||u(t)-u_inf||^2 <= e^{-theta t} E||u0-u_inf||^2 under
// mu lambda_1 > 2 eta + L with Phi(t,u_inf) = 0.
RateReport ms_stability_experiment(const PhysicsParams& p, const NoiseModel& model,
                                   const SpectralField& u_inf, const RandomFieldLaw& u0_law,
                                   int paths, const SolverConfig& cfg, std::uint64_t seed,
                                   double burn_frac = 0.2);

// Synchronous coupling: E||u-v||^2 <= ||u0-v0||^2 e^{-(mu lambda_1-(2 eta+L)) t}.
RateReport contraction_experiment(const PhysicsParams& p, const NoiseModel& model,
                                  const SpectralField& u0, const SpectralField& v0, int paths,
                                  const SolverConfig& cfg, std::uint64_t seed,
                                  double burn_frac = 0.2);

// Pathwise log bound of the noise-stabilization theorem:
//   log||u(t)-u_inf||^2 <= log||u0-u_inf||^2 + (-2 mu lambda_1 + 2 eta - sigma^2) t
//                          + 2 sigma W(t) + slack,
// slack = max(2 sigma, 1) sqrt(dt) (scheme tolerance). Requires the scalar
// Wiener path recorded in the trajectory.
struct StabilizationReport {
    double zeta = 0.0;
    int checked = 0;
    int violations = 0;
    double violation_fraction = 0.0;
    bool degenerate = false;  // u0 = u_inf: deviation path identically zero
};
StabilizationReport stabilization_pathwise_check(const PhysicsParams& p, double sigma,
                                                 const TrajectoryRecord& rec);

// Tail slope of log||u(t)-ref||_H over the last half of the run;
// -infinity when the deviation underflows.
double as_lyapunov_estimate(const TrajectoryRecord& rec);

// log-linear fit of a mean-square series on [burn_frac*T, T]
RateReport fit_decay_rate(const EnsembleStats& stats, double theoretical, double burn_frac);

}  // namespace scbf
