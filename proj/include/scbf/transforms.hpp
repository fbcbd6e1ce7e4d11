#pragma once

#include <vector>

#include "scbf/spectral_field.hpp"

namespace scbf {

// Real collocation samples on a (possibly padded) uniform grid,
// component-major; grid_n points per axis, grid_n^dim samples per
// component.
struct PhysicalField {
    SpacePtr space;
    int grid_n = 0;
    std::vector<double> values;  // dim * grid_n^dim

    std::size_t points() const {
        std::size_t n = 1;
        for (int i = 0; i < space->dim(); ++i) n *= static_cast<std::size_t>(grid_n);
        return n;
    }
    double* component(int c) { return values.data() + static_cast<std::size_t>(c) * points(); }
    const double* component(int c) const {
        return values.data() + static_cast<std::size_t>(c) * points();
    }
    double quadrature_weight() const;  // (2pi/grid_n)^dim
};

// u(x) = sum_k uhat(k) e^{ik.x} evaluated on a grid padded by `padding`
// (>= 1). Round trip with to_spectral is the identity on retained modes
// to <= 1e-13 relative.
PhysicalField to_physical(const SpectralField& u, double padding);

// Forward analysis: uhat(k) = (1/m^d) sum_x u(x) e^{-ik.x}, truncated to
// the retained set with Hermitian symmetry enforced. No projection.
SpectralField to_spectral(const PhysicalField& p, const SpacePtr& space);

// Same transforms for a single scalar array on the grid (used by the
// nonlinear pipelines): samples -> retained complex coefficients.
void scalar_to_physical(const SpectralSpace& space, const std::complex<double>* coeffs,
                        int grid_n, double* out_samples);
void scalar_to_spectral(const SpectralSpace& space, const double* samples, int grid_n,
                        std::complex<double>* out_coeffs);

}  // namespace scbf
