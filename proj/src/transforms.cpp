#include "scbf/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace scbf {
namespace {

// FFTW c2c plans cached per (dim, m). Planning is not thread-safe and is
// serialized; execution uses the new-array interface on fftw_malloc'd
// buffers (same alignment class as the planning buffers). FFTW_ESTIMATE
// keeps plan selection input-independent, which the byte-identical-rerun
// contract relies on.
struct PlanPair {
    fftw_plan fwd = nullptr;  // e^{-ik.x} analysis
    fftw_plan bwd = nullptr;  // e^{+ik.x} synthesis
};

std::mutex g_plan_mutex;
std::map<std::pair<int, int>, PlanPair>& plan_cache() {
    static std::map<std::pair<int, int>, PlanPair> cache;
    return cache;
}

PlanPair get_plans(int dim, int m) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find({dim, m});
    if (it != cache.end()) return it->second;

    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(m);
    fftw_complex* buf = fftw_alloc_complex(total);
    PlanPair pp;
    if (dim == 2) {
        pp.fwd = fftw_plan_dft_2d(m, m, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        pp.bwd = fftw_plan_dft_2d(m, m, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
        pp.fwd = fftw_plan_dft_3d(m, m, m, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        pp.bwd = fftw_plan_dft_3d(m, m, m, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_free(buf);
    cache[{dim, m}] = pp;
    return pp;
}

struct FftwBuffer {
    fftw_complex* p = nullptr;
    explicit FftwBuffer(std::size_t n) : p(fftw_alloc_complex(n)) {
        if (!p) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(p); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

// wrap integer frequency into the [0,m) bin index of an m-point DFT
inline std::size_t bin(int k, int m) { return static_cast<std::size_t>(k >= 0 ? k : k + m); }

std::size_t grid_index(const SpectralSpace& sp, int m, const std::array<int, 3>& k) {
    if (sp.dim() == 2) return bin(k[0], m) * m + bin(k[1], m);
    return (bin(k[0], m) * m + bin(k[1], m)) * m + bin(k[2], m);
}

}  // namespace

double PhysicalField::quadrature_weight() const {
    double h = space->domain_length() / grid_n;
    double w = 1.0;
    for (int i = 0; i < space->dim(); ++i) w *= h;
    return w;
}

void scalar_to_physical(const SpectralSpace& space, const std::complex<double>* coeffs,
                        int grid_n, double* out_samples) {
    const int d = space.dim();
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(grid_n);
    FftwBuffer buf(total);
    std::memset(buf.p, 0, sizeof(fftw_complex) * total);
    for (int m = 0; m < space.n_retained(); ++m) {
        std::size_t g = grid_index(space, grid_n, space.mode(m));
        buf.p[g][0] = coeffs[m].real();
        buf.p[g][1] = coeffs[m].imag();
    }
    PlanPair pp = get_plans(d, grid_n);
    fftw_execute_dft(pp.bwd, buf.p, buf.p);
    for (std::size_t i = 0; i < total; ++i) out_samples[i] = buf.p[i][0];
}

void scalar_to_spectral(const SpectralSpace& space, const double* samples, int grid_n,
                        std::complex<double>* out_coeffs) {
    const int d = space.dim();
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(grid_n);
    FftwBuffer buf(total);
    for (std::size_t i = 0; i < total; ++i) {
        buf.p[i][0] = samples[i];
        buf.p[i][1] = 0.0;
    }
    PlanPair pp = get_plans(d, grid_n);
    fftw_execute_dft(pp.fwd, buf.p, buf.p);
    const double inv = 1.0 / static_cast<double>(total);
    for (int m = 0; m < space.n_retained(); ++m) {
        std::size_t g = grid_index(space, grid_n, space.mode(m));
        out_coeffs[m] = std::complex<double>(buf.p[g][0] * inv, buf.p[g][1] * inv);
    }
}

PhysicalField to_physical(const SpectralField& u, double padding) {
    const SpectralSpace& sp = u.space();
    PhysicalField out;
    out.space = u.space_ptr();
    out.grid_n = sp.grid_size(padding);
    std::size_t pts = 1;
    for (int i = 0; i < sp.dim(); ++i) pts *= static_cast<std::size_t>(out.grid_n);
    out.values.resize(static_cast<std::size_t>(sp.dim()) * pts);
    for (int c = 0; c < sp.dim(); ++c) {
        scalar_to_physical(sp, &u.at(c, 0), out.grid_n, out.component(c));
    }
    return out;
}

SpectralField to_spectral(const PhysicalField& p, const SpacePtr& space) {
    if (!p.space->same_as(*space)) throw std::invalid_argument("to_spectral: space mismatch");
    SpectralField u(space);
    for (int c = 0; c < space->dim(); ++c) {
        scalar_to_spectral(*space, p.component(c), p.grid_n, &u.at(c, 0));
    }
    u.enforce_hermitian();
    return u;
}

}  // namespace scbf
