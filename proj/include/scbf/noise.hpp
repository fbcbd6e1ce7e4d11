#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scbf/philox.hpp"
#include "scbf/spectral_field.hpp"

namespace scbf {

// Eigenvalues of the covariance Q in the real Stokes eigenbasis, one entry
// per (retained wavevector, polarization); q is constant on {k,-k} pairs so
// sampled fields are real. trace = sum of all entries (trace class).
struct QSpectrum {
    SpacePtr space;
    std::vector<double> q;  // n_retained * (dim-1), mode-major
    double trace = 0.0;

    double at(int m, int p) const {
        return q[static_cast<std::size_t>(m) * (space->dim() - 1) + p];
    }
    // q_k = c |k|^{-gamma} scaled so the total trace matches; gamma > dim
    // keeps the tail summable in the infinite-dimensional limit.
    static QSpectrum power_law(const SpacePtr& space, double trace_target, double gamma);
};

// Coefficients of u in the real orthonormal eigenbasis attached to the
// representative k of a {k,-k} pair and polarization p:
//   e_cos = sqrt(2/(2pi)^d) cos(k.x) d_p,  e_sin = sqrt(2/(2pi)^d) sin(k.x) d_p
struct RealModeCoeff {
    double c_cos = 0.0;
    double c_sin = 0.0;
};
RealModeCoeff real_mode_coeff(const SpectralField& u, int rep_mode, int pol);

// Noise coefficient Phi(t,u). Growth constant K and Lipschitz constant L
// are analytic per variant:
//   Additive:         hs = Tr Q,                      K = Tr Q,  L = 0
//   ScalarStationary: hs = sigma^2 ||u - u*||_H^2,    K = 2 sigma^2 max(1, ||u*||_H^2),
//                     L = sigma^2
//   LinearDiagonal:   hs = sum q s^2 <u-u*, e>^2,     K = 2 max(q s^2) max(1, ||u*||_H^2),
//                     L = max(q s^2)
struct NoiseModel {
    enum class Kind { None, Additive, ScalarStationary, LinearDiagonal };
    Kind kind = Kind::None;
    QSpectrum spectrum;            // Additive, LinearDiagonal
    double sigma = 0.0;            // ScalarStationary
    std::vector<double> sigma_k;   // LinearDiagonal, same layout as spectrum.q
    SpectralField u_star;          // fixed point field (may be empty = 0)

    static NoiseModel none();
    static NoiseModel additive(QSpectrum spectrum);
    static NoiseModel scalar_stationary(double sigma, SpectralField u_star);
    static NoiseModel linear_diagonal(QSpectrum spectrum, std::vector<double> sigma_k,
                                      SpectralField u_star);

    bool is_scalar() const { return kind == Kind::ScalarStationary; }
    double growth_K() const;
    double lipschitz_L() const;
    std::string kind_name() const;
};

// One Wiener increment over dt. For Q-Wiener variants `field` carries the
// increment; for ScalarStationary `scalar` is the 1-D Brownian increment.
// `raw` keeps the underlying N(0,1) draws in canonical order.
struct WienerIncrement {
    double dt = 0.0;
    double scalar = 0.0;
    SpectralField field;
    std::vector<double> raw;
};

// Per-mode coefficient variance in the e-basis is q_k dt; dt = 0 gives the
// zero increment. Draw slots depend only on (stream, step), never on
// evaluation order.
WienerIncrement sample_increment(const NoiseModel& model, const SpacePtr& space, double dt,
                                 const GaussianStream& stream, std::uint64_t step);

// Phi(t,u) applied to the increment.
SpectralField phi_apply_increment(const NoiseModel& model, double t, const SpectralField& u,
                                  const WienerIncrement& incr);

// ||Phi(t,u)||^2_{L_Q} = Tr(Phi Q Phi^*)
double hs_norm_sq(const NoiseModel& model, double t, const SpectralField& u);

// ||A^{1/2} Phi(t,u)||^2_{L_Q}: computable for the diagonal models; the
// regularity-hypothesis constant K~ is documented per model rather than fixed.
double hs_norm_sq_gradient(const NoiseModel& model, double t, const SpectralField& u);

}  // namespace scbf
