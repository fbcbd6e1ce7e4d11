#pragma once

#include "scbf/operators.hpp"

namespace scbf {

// Brute-force references for the pseudo-spectral operators, restricted to
// n_modes <= 8 per axis (cost guard; exactness over scale).

// direct double sum over retained modes of P_H (u.grad)v
SpectralField convolution_oracle_B(const SpectralField& u, const SpectralField& v);

// dense collocation of |u|^{r-1}u at 8x padding, treated as the reference
// for dealiasing validation
SpectralField pointwise_oracle_C(const SpectralField& u, double r);

// b(u,v,w) as an explicit spectral triple sum
double trilinear_oracle(const SpectralField& u, const SpectralField& v, const SpectralField& w);

// per-mode divergence-free least squares via the KKT system (independent
// of the projector formula)
SpectralField leray_oracle(const SpectralField& v);

}  // namespace scbf
