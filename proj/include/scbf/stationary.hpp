#pragma once

#include "scbf/integrator.hpp"

namespace scbf {

// Steady state mu A u + B(u) + beta C(u) = f, solved by damped Picard with
// the exactly invertible mu A; pseudo-time marching (deterministic simulate
// to steady state) takes over on stagnation.
struct StationaryResult {
    SpectralField u_star;
    double residual_dual_norm = 0.0;  // ||mu A u + B + beta C - f||_{V'}
    int iterations = 0;
    bool converged = false;
    bool used_marching = false;
};

struct StationaryOptions {
    double tol = 1e-8;    // relative to ||f||_{V'}
    int max_iter = 10000;
    double omega = 0.7;   // relaxation; halved on residual increase
    const SpectralField* initial_guess = nullptr;  // default: Stokes solve of f
};

// ||mu A u + B(u) + beta C(u) - f||_{V'}, recomputed from scratch
double stationary_residual(const SpectralField& u, const SpectralField& f,
                           const PhysicsParams& p);

StationaryResult solve_stationary(const SpectralField& f, const PhysicsParams& p,
                                  const StationaryOptions& opts = {});

// mu ||u*||_V^2 + 2 beta ||u*||_{L^{r+1}}^{r+1} <= (1/mu) ||f||_{V'}^2
struct StationaryBound {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};
StationaryBound stationary_bound_check(const StationaryResult& res, const SpectralField& f,
                                       const PhysicsParams& p);

// uniqueness regime: mu > 2 eta / lambda_1 for r > 3; 2 beta mu >= 1 for
// r = 3; no guarantee otherwise.
bool uniqueness_condition(const PhysicsParams& p);

}  // namespace scbf
