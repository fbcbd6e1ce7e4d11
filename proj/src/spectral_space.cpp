#include "scbf/spectral_space.hpp"

#include <cmath>
#include <stdexcept>

namespace scbf {
namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::shared_ptr<const SpectralSpace> SpectralSpace::make(int dim, int n_modes,
                                                         double padding_factor) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("SpectralSpace: dim must be 2 or 3");
    if (!is_pow2(n_modes) || n_modes < 4)
        throw std::invalid_argument("SpectralSpace: n_modes must be a power of two >= 4");
    if (padding_factor < 1.5)
        throw std::invalid_argument("SpectralSpace: padding_factor must be >= 3/2");

    auto sp = std::shared_ptr<SpectralSpace>(new SpectralSpace());
    sp->dim_ = dim;
    sp->n_modes_ = n_modes;
    sp->kmax_ = n_modes / 2 - 1;
    sp->padding_ = padding_factor;
    sp->volume_ = std::pow(sp->domain_length(), dim);

    const int K = sp->kmax_;
    const int W = 2 * K + 1;
    const int kz_lo = (dim == 3) ? -K : 0;
    const int kz_hi = (dim == 3) ? K : 0;

    sp->lookup_.assign(static_cast<std::size_t>(W) * W * (dim == 3 ? W : 1), -1);
    auto lookup_slot = [&](int kx, int ky, int kz) -> int& {
        std::size_t ix = static_cast<std::size_t>(kx + K);
        std::size_t iy = static_cast<std::size_t>(ky + K);
        std::size_t iz = static_cast<std::size_t>(kz + K) * (dim == 3 ? 1 : 0);
        return sp->lookup_[(ix * W + iy) * (dim == 3 ? W : 1) + iz];
    };

    // lexicographic in (kx,ky,kz)
    for (int kx = -K; kx <= K; ++kx)
        for (int ky = -K; ky <= K; ++ky)
            for (int kz = kz_lo; kz <= kz_hi; ++kz) {
                if (kx == 0 && ky == 0 && kz == 0) continue;
                int m = static_cast<int>(sp->modes_.size());
                sp->modes_.push_back({kx, ky, kz});
                double l2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
                sp->lambda_.push_back(l2);
                if (l2 > sp->lambda_max_) sp->lambda_max_ = l2;
                lookup_slot(kx, ky, kz) = m;
            }

    sp->conj_.resize(sp->modes_.size());
    for (int m = 0; m < sp->n_retained(); ++m) {
        const auto& k = sp->modes_[m];
        sp->conj_[m] = sp->index_of(-k[0], -k[1], -k[2]);
        bool rep = (k[0] > 0) || (k[0] == 0 && k[1] > 0) || (k[0] == 0 && k[1] == 0 && k[2] > 0);
        if (rep) sp->reps_.push_back(m);
    }

    sp->pol_.resize(sp->modes_.size() * (dim - 1));
    for (int m = 0; m < sp->n_retained(); ++m) {
        const auto& k = sp->modes_[m];
        double kx = k[0], ky = k[1], kz = k[2];
        double nk = std::sqrt(kx * kx + ky * ky + kz * kz);
        if (dim == 2) {
            sp->pol_[m] = {-ky / nk, kx / nk, 0.0};
        } else {
            // deterministic axis not parallel to k
            double ax = 0, ay = 0, az = 1;
            if (kx == 0 && ky == 0) { ax = 1; az = 0; }
            // d1 = k x a, normalized; d2 = k x d1 / |k|
            double d1x = ky * az - kz * ay, d1y = kz * ax - kx * az, d1z = kx * ay - ky * ax;
            double n1 = std::sqrt(d1x * d1x + d1y * d1y + d1z * d1z);
            d1x /= n1; d1y /= n1; d1z /= n1;
            double d2x = (ky * d1z - kz * d1y) / nk;
            double d2y = (kz * d1x - kx * d1z) / nk;
            double d2z = (kx * d1y - ky * d1x) / nk;
            sp->pol_[static_cast<std::size_t>(m) * 2 + 0] = {d1x, d1y, d1z};
            sp->pol_[static_cast<std::size_t>(m) * 2 + 1] = {d2x, d2y, d2z};
        }
    }
    return sp;
}

int SpectralSpace::index_of(int kx, int ky, int kz) const {
    const int K = kmax_;
    if (kx < -K || kx > K || ky < -K || ky > K) return -1;
    if (dim_ == 2) {
        if (kz != 0) return -1;
        return lookup_[static_cast<std::size_t>(kx + K) * (2 * K + 1) + (ky + K)];
    }
    if (kz < -K || kz > K) return -1;
    const int W = 2 * K + 1;
    return lookup_[(static_cast<std::size_t>(kx + K) * W + (ky + K)) * W + (kz + K)];
}

int SpectralSpace::grid_size(double padding) const {
    if (padding < 1.0) throw std::invalid_argument("grid padding must be >= 1");
    int m = static_cast<int>(std::ceil(padding * n_modes_ - 1e-9));
    if (m < n_modes_) m = n_modes_;
    return m;
}

}  // namespace scbf
