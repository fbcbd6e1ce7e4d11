#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace scbf {

// Cubic torus [0,2pi)^dim discretization. Retained wavevectors are the
// integer lattice points with |k_i| <= n_modes/2 - 1, excluding 0 (zero
// mean) and Nyquist planes, so the set is closed under k -> -k and the
// Stokes eigenvalues lambda_k = |k|^2 start at lambda_1 = 1.
class SpectralSpace {
  public:
    static std::shared_ptr<const SpectralSpace> make(int dim, int n_modes,
                                                     double padding_factor = 1.5);

    int dim() const { return dim_; }
    int n_modes() const { return n_modes_; }
    int kmax() const { return kmax_; }
    double domain_length() const { return 6.283185307179586476925286766559; }
    double lambda1() const { return 1.0; }
    double padding_factor() const { return padding_; }
    // (2pi)^dim, the Parseval weight of one Fourier coefficient
    double cell_volume() const { return volume_; }

    int n_retained() const { return static_cast<int>(modes_.size()); }
    const std::array<int, 3>& mode(int m) const { return modes_[m]; }
    double lambda(int m) const { return lambda_[m]; }
    double lambda_max() const { return lambda_max_; }
    // index of a wavevector, -1 if not retained
    int index_of(int kx, int ky, int kz) const;
    int conj_index(int m) const { return conj_[m]; }

    // Representatives: one wavevector per {k,-k} pair (first nonzero
    // component positive), in lexicographic order.
    const std::vector<int>& pair_representatives() const { return reps_; }

    // Orthonormal polarization basis of k^perp: dim-1 vectors per mode.
    // dim==2: k^perp/|k|. dim==3: deterministic right-handed pair.
    int n_polarizations() const { return dim_ - 1; }
    const std::array<double, 3>& polarization(int m, int p) const {
        return pol_[static_cast<std::size_t>(m) * (dim_ - 1) + p];
    }

    // grid points per axis for a given padding factor (>= 1)
    int grid_size(double padding) const;

    bool same_as(const SpectralSpace& other) const {
        return dim_ == other.dim_ && n_modes_ == other.n_modes_;
    }

  private:
    SpectralSpace() = default;

    int dim_ = 2;
    int n_modes_ = 0;
    int kmax_ = 0;
    double padding_ = 1.5;
    double volume_ = 0.0;
    double lambda_max_ = 0.0;
    std::vector<std::array<int, 3>> modes_;
    std::vector<double> lambda_;
    std::vector<int> conj_;
    std::vector<int> reps_;
    std::vector<std::array<double, 3>> pol_;
    std::vector<int> lookup_;  // dense (2K+1)^dim table of indices
};

using SpacePtr = std::shared_ptr<const SpectralSpace>;

}  // namespace scbf
