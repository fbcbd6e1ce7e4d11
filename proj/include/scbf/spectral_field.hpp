#pragma once

#include <complex>
#include <vector>

#include "scbf/spectral_space.hpp"

namespace scbf {

// Divergence-free, zero-mean velocity field stored as complex Fourier
// coefficients per retained wavevector and component (component-major).
// Invariants (testable): k.uhat(k) = 0, uhat(-k) = conj(uhat(k)).
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(SpacePtr space)
        : space_(std::move(space)),
          data_(static_cast<std::size_t>(space_->dim()) * space_->n_retained()) {}

    const SpacePtr& space_ptr() const { return space_; }
    const SpectralSpace& space() const { return *space_; }
    bool empty() const { return !space_; }

    std::complex<double>& at(int comp, int m) {
        return data_[static_cast<std::size_t>(comp) * space_->n_retained() + m];
    }
    const std::complex<double>& at(int comp, int m) const {
        return data_[static_cast<std::size_t>(comp) * space_->n_retained() + m];
    }

    // interleaved (re,im) view, length 2*dim*n_retained
    double* raw() { return reinterpret_cast<double*>(data_.data()); }
    const double* raw() const { return reinterpret_cast<const double*>(data_.data()); }
    std::size_t raw_size() const { return 2 * data_.size(); }

    void set_zero();
    // y += a*x
    void axpy(double a, const SpectralField& x);
    void scale(double a);

    // uhat(-k) <- conj pair average; exact for already-symmetric data
    void enforce_hermitian();
    // mode-wise (I - k k^T/|k|^2)
    void project_divergence_free();

    double hermitian_defect() const;   // max |uhat(k) - conj(uhat(-k))|
    double divergence_defect() const;  // max |k.uhat(k)|

    SpectralField& operator+=(const SpectralField& o) { axpy(1.0, o); return *this; }
    SpectralField& operator-=(const SpectralField& o) { axpy(-1.0, o); return *this; }

  private:
    SpacePtr space_;
    std::vector<std::complex<double>> data_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField u);

// H inner product (u,v) = int u.v dx, via Parseval
double inner_h(const SpectralField& u, const SpectralField& v);

// Random divergence-free field: coefficient magnitude ~ amp*|k|^{-decay}
// with Hermitian-paired Gaussian phases; all SpectralField invariants hold
// by construction.  Deterministic in (seed, tag).
struct RandomFieldLaw {
    double decay = 3.0;
    double amplitude = 1.0;
    std::uint64_t seed = 1;
    int mode_cutoff = 0;  // 0: all retained modes; else only |k|^2 <= cutoff^2
};
SpectralField random_field(const SpacePtr& space, const RandomFieldLaw& law,
                           std::uint32_t tag = 0);

// Single divergence-free shear mode amp*cos(k.x)*d with d the first
// polarization vector of k (plus the Hermitian partner).
SpectralField shear_mode(const SpacePtr& space, int kx, int ky, int kz, double amp);

}  // namespace scbf
