#pragma once

#include <functional>
#include <string>

#include "scbf/stability.hpp"

namespace scbf {

// Functional of the field plus an H-Lipschitz constant valid on the
// realized ensemble. On the finite retained span every listed functional
// is H-Lipschitz with a computable constant (inverse inequalities); the
// constant is a function of the realized max statistics.
struct EnsembleMaxStats {
    double max_h = 0.0;    // max ||u||_H
    double max_v = 0.0;    // max ||u||_V
    double max_lp = 0.0;   // max ||u||_{L^{r+1}}
};
struct Observable {
    std::string name;
    std::function<double(const SpectralField&)> eval;
    std::function<double(const EnsembleMaxStats&)> lipschitz;
};

// ||u||_H^2, ||u||_V^2, int |u|^{r+1}, low-mode amplitudes |uhat_k|^2 for
// |k|^2 <= 4, and tanh(<u,g>_H) probes with fixed unit-norm g.
std::vector<Observable> default_observables(const SpacePtr& space, double r);

struct TimeAverageReport {
    struct Entry {
        std::string name;
        double average = 0.0;
        double se = 0.0;  // batch-means standard error
        int batches = 0;
        int samples = 0;
    };
    std::vector<Entry> entries;
    double burn_in = 0.0;
};
// Running averages of sampled observable series after burn-in; errors via
// >= 20 non-overlapping batches. Throws on insufficient samples.
TimeAverageReport time_average(const std::vector<std::string>& names,
                               const std::vector<std::vector<double>>& series,
                               const std::vector<double>& times, double burn_frac,
                               int n_batches = 20);

// Krylov-Bogoliubov tightness surrogate with the K*t growth retained:
//   (1/T) int_0^T E||u||_V^2 dt <= (||u0||_H^2 + K T) / ((2 mu - K/lambda_1) T).
// Requires mu > K/(2 lambda_1).
struct TightnessReport {
    double time_avg_v2 = 0.0;
    double se = 0.0;
    double bound = 0.0;
    bool holds = false;
};
TightnessReport tightness_diagnostic(const SpectralField& u0, const PhysicsParams& p,
                                     const NoiseModel& model, int paths, const SolverConfig& cfg,
                                     std::uint64_t seed);

// |E phi(u(T,u0)) - E phi(u(T,v0))| against the exponential envelope
//   L_phi e^{-(mu lambda_1 - (2 eta + L)) T / 2} (||u0||_H + ||v0||_H)
// estimated with synchronous coupling (common increments per sample pair).
struct MixingReport {
    struct Entry {
        std::string name;
        double est_u = 0.0, est_v = 0.0;
        double discrepancy = 0.0;
        double se = 0.0;  // paired-difference standard error
        double lipschitz = 0.0;
        double envelope = 0.0;
        bool under_envelope = false;  // discrepancy <= envelope + 3 SE
    };
    std::vector<Entry> entries;
    double rate = 0.0;
    int blowups = 0;
};
MixingReport mixing_test(const PhysicsParams& p, const NoiseModel& model,
                         const SpectralField& u0, const SpectralField& v0,
                         const std::vector<Observable>& observables, int paths,
                         const SolverConfig& cfg, std::uint64_t seed);

}  // namespace scbf
