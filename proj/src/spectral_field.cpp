#include "scbf/spectral_field.hpp"

#include <cmath>
#include <stdexcept>

#include "scbf/kernels.hpp"
#include "scbf/philox.hpp"

namespace scbf {

void SpectralField::set_zero() {
    std::fill(data_.begin(), data_.end(), std::complex<double>(0.0, 0.0));
}

void SpectralField::axpy(double a, const SpectralField& x) {
    if (!space_->same_as(x.space())) throw std::invalid_argument("axpy: space mismatch");
    kernels().axpy(raw(), x.raw(), a, raw_size());
}

void SpectralField::scale(double a) {
    double* p = raw();
    const std::size_t n = raw_size();
    for (std::size_t i = 0; i < n; ++i) p[i] *= a;
}

void SpectralField::enforce_hermitian() {
    const int nm = space_->n_retained();
    for (int c = 0; c < space_->dim(); ++c) {
        for (int m = 0; m < nm; ++m) {
            int mc = space_->conj_index(m);
            if (mc < m) continue;
            std::complex<double> a = at(c, m);
            std::complex<double> b = at(c, mc);
            std::complex<double> avg = 0.5 * (a + std::conj(b));
            at(c, m) = avg;
            at(c, mc) = std::conj(avg);
        }
    }
}

void SpectralField::project_divergence_free() {
    const int nm = space_->n_retained();
    const int d = space_->dim();
    for (int m = 0; m < nm; ++m) {
        const auto& k = space_->mode(m);
        double l2 = space_->lambda(m);
        std::complex<double> kdotu(0.0, 0.0);
        for (int c = 0; c < d; ++c) kdotu += double(k[c]) * at(c, m);
        kdotu /= l2;
        for (int c = 0; c < d; ++c) at(c, m) -= double(k[c]) * kdotu;
    }
}

double SpectralField::hermitian_defect() const {
    double worst = 0.0;
    const int nm = space_->n_retained();
    for (int c = 0; c < space_->dim(); ++c)
        for (int m = 0; m < nm; ++m) {
            int mc = space_->conj_index(m);
            double d = std::abs(at(c, m) - std::conj(at(c, mc)));
            if (d > worst) worst = d;
        }
    return worst;
}

double SpectralField::divergence_defect() const {
    double worst = 0.0;
    const int nm = space_->n_retained();
    const int d = space_->dim();
    for (int m = 0; m < nm; ++m) {
        const auto& k = space_->mode(m);
        std::complex<double> kdotu(0.0, 0.0);
        for (int c = 0; c < d; ++c) kdotu += double(k[c]) * at(c, m);
        double v = std::abs(kdotu);
        if (v > worst) worst = v;
    }
    return worst;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { a += b; return a; }
SpectralField operator-(SpectralField a, const SpectralField& b) { a -= b; return a; }
SpectralField operator*(double a, SpectralField u) { u.scale(a); return u; }

double inner_h(const SpectralField& u, const SpectralField& v) {
    if (!u.space().same_as(v.space())) throw std::invalid_argument("inner_h: space mismatch");
    return u.space().cell_volume() * kernels().dot(u.raw(), v.raw(), u.raw_size());
}

SpectralField random_field(const SpacePtr& space, const RandomFieldLaw& law, std::uint32_t tag) {
    SpectralField u(space);
    GaussianStream gs(law.seed, tag, StreamPurpose::InitialData);
    const int npol = space->n_polarizations();
    std::uint64_t slot = 0;
    for (int m : space->pair_representatives()) {
        double l2 = space->lambda(m);
        if (law.mode_cutoff > 0 && l2 > double(law.mode_cutoff) * law.mode_cutoff) {
            slot += 2 * npol;
            continue;
        }
        double mag = law.amplitude * std::pow(std::sqrt(l2), -law.decay);
        int mc = space->conj_index(m);
        for (int p = 0; p < npol; ++p) {
            const auto& dvec = space->polarization(m, p);
            double a = gs.normal(0, slot++);
            double b = gs.normal(0, slot++);
            std::complex<double> amp = 0.5 * mag * std::complex<double>(a, -b);
            for (int c = 0; c < space->dim(); ++c) {
                u.at(c, m) += amp * dvec[c];
                u.at(c, mc) += std::conj(amp) * dvec[c];
            }
        }
    }
    return u;
}

SpectralField shear_mode(const SpacePtr& space, int kx, int ky, int kz, double amp) {
    SpectralField u(space);
    int m = space->index_of(kx, ky, kz);
    if (m < 0) throw std::invalid_argument("shear_mode: wavevector not retained");
    int mc = space->conj_index(m);
    const auto& d = space->polarization(m, 0);
    for (int c = 0; c < space->dim(); ++c) {
        u.at(c, m) = 0.5 * amp * d[c];
        u.at(c, mc) = 0.5 * amp * d[c];
    }
    return u;
}

}  // namespace scbf
