#pragma once

#include "scbf/norms.hpp"

namespace scbf {

struct PhysicsParams {
    double mu = 1.0;    // Brinkman viscosity, > 0
    double beta = 1.0;  // Forchheimer coefficient, > 0
    double r = 3.0;     // absorption exponent, >= 1 (Darcy alpha fixed to 0)
    SpectralField forcing;  // empty = zero forcing

    bool has_forcing() const { return !forcing.empty(); }
    // r = 3 guarantees (global monotonicity etc.) require 2*beta*mu >= 1
    bool critical_coupling_ok() const { return 2.0 * beta * mu >= 1.0; }
    void validate() const;
};

// A u: mode-wise multiply by lambda_k = |k|^2
SpectralField stokes_apply(const SpectralField& u);
// A^s u (s may be negative; mode 0 removed so this is total)
SpectralField stokes_power_apply(const SpectralField& u, double s);
// mode-wise (I - k k^T/|k|^2); idempotent, kills gradient modes
SpectralField leray_project(const SpectralField& v);
// P_{1/n}: coefficient at lambda_k < n^2 scaled by e^{-lambda_k/n}, else 0
SpectralField smoothing_projection(const SpectralField& u, double n);

// b(u,v,w) = int (u.grad v).w dx, exact collocation quadrature
double trilinear_b(const SpectralField& u, const SpectralField& v, const SpectralField& w);

// B(u,v) = P_H (u.grad)v, dealiased (divergence form, div u = 0)
SpectralField convective_B(const SpectralField& u, const SpectralField& v);
inline SpectralField convective_B(const SpectralField& u) { return convective_B(u, u); }

// C(u) = P_H(|u|^{r-1} u). Exact dealiasing for odd integer r (grid padded
// by (r+1)/2); 4x padded best-effort otherwise.
SpectralField forchheimer_C(const SpectralField& u, double r);
double forchheimer_padding(double r);

// G(u) = mu A u + B(u) + beta C(u)
SpectralField combined_G(const SpectralField& u, const PhysicsParams& p);

// One shared physical-space pass: B(u), C(u), and int |u|^{r+1} dx.
struct NonlinearEval {
    SpectralField B;
    SpectralField C;
    double lr1_integral = 0.0;
};
NonlinearEval eval_nonlinear(const SpectralField& u, double r);

// eta = (r-3)/(2 mu (r-1)) * (2/(beta mu (r-1)))^{2/(r-3)} for r > 3;
// 0 for r = 3 with 2 beta mu >= 1. Throws std::domain_error otherwise.
double eta_constant(const PhysicsParams& p);

struct MonotonicityReport {
    double inner = 0.0;     // <G(u)-G(v), u-v>
    double eta_term = 0.0;  // eta ||u-v||_H^2   (0 in the r=3 branch)
    double v_term = 0.0;    // (mu/2)||u-v||_V^2 (0 in the r=3 branch)
    double gap = 0.0;       // inner + eta_term - v_term; inner for r=3
    double scale = 0.0;     // |inner| + eta_term + v_term + ||u-v||_V^2
};
MonotonicityReport monotonicity_gap(const SpectralField& u, const SpectralField& v,
                                    const PhysicsParams& p);

struct BoundPair {
    double lhs = 0.0;
    double rhs = 0.0;
};
// ||B(u,v)||_{V'} <= ||u||_{L^{r+1}} ||v||_{L^{2(r+1)/(r-1)}}
BoundPair b_operator_bound_check(const SpectralField& u, const SpectralField& v, double r);
// ||B(u)||_{V'} <= ||u||_{L^{r+1}}^{(r+1)/(r-1)} ||u||_H^{(r-3)/(r-1)}, r > 3
BoundPair b_self_bound_check(const SpectralField& u, double r);
// || |u|^{r-1}u - |v|^{r-1}v ||_{L^{(r+1)/r}}
//   <= r (||u||_{L^{r+1}} + ||v||_{L^{r+1}})^{r-1} ||u-v||_{L^{r+1}}
BoundPair lipschitz_check_C(const SpectralField& u, const SpectralField& v, double r);

// (I1, I2, I3) = (int |grad u|^2 |u|^{r-1}, int |u|^{r-1} u . Au, r*I1);
// on the torus 0 <= I1 <= I2 <= I3.
struct RegularityTriple {
    double i1 = 0.0, i2 = 0.0, i3 = 0.0;
};
RegularityTriple periodic_regularity_bounds(const SpectralField& u, double r);

// <C(u)-C(v), u-v> and the lower bound
// (1/2)|| |u|^{(r-1)/2}(u-v) ||_H^2 + (1/2)|| |v|^{(r-1)/2}(u-v) ||_H^2,
// both by the same exact quadrature.
BoundPair c_monotone_bound(const SpectralField& u, const SpectralField& v, double r);

}  // namespace scbf
