#pragma once

#include "scbf/transforms.hpp"

namespace scbf {

// ||u||_H^2 = int |u|^2 dx, by Parseval
double h_norm_sq(const SpectralField& u);
// ||u||_V^2 = int |grad u|^2 dx = sum lambda_k |uhat_k|^2 (2pi)^d
double v_norm_sq(const SpectralField& u);
// ||A^s u||-type weighted norm: sum lambda_k^{2s} |uhat|^2 (2pi)^d.
// s = -1/2 realizes the V' dual norm (mode 0 is removed, A invertible).
double a_power_norm_sq(const SpectralField& u, double s);

// Collocation quadrature grid for int |u|^p: exact for even integer p
// (padding ceil(p/2)), 4x padded best-effort otherwise.
double lp_quadrature_padding(const SpectralSpace& space, double p);

// ||u||_{L^p} with |u(x)| the pointwise Euclidean norm; p >= 1.
double lp_norm(const SpectralField& u, double p);
// int |u|^p dx (= lp_norm^p, computed directly)
double lp_integral(const SpectralField& u, double p);

// pointwise |u(x)|^2 on the grid of ph
std::vector<double> pointwise_abs2(const PhysicalField& ph);

}  // namespace scbf
