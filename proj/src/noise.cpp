#include "scbf/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "scbf/norms.hpp"

namespace scbf {
namespace {

double h2_or_zero(const SpectralField& u) { return u.empty() ? 0.0 : h_norm_sq(u); }

// uhat(k) and uhat(-k) entries for real-basis amplitudes (c_cos, c_sin)
// on polarization d of the representative k:
//   uhat(k) = (c_cos - i c_sin) d / sqrt(2 (2pi)^d)
void add_real_mode(SpectralField& f, int rep, int pol, double c_cos, double c_sin) {
    const SpectralSpace& sp = f.space();
    const double scale = 1.0 / std::sqrt(2.0 * sp.cell_volume());
    const auto& d = sp.polarization(rep, pol);
    std::complex<double> amp(scale * c_cos, -scale * c_sin);
    int mc = sp.conj_index(rep);
    for (int c = 0; c < sp.dim(); ++c) {
        f.at(c, rep) += amp * d[c];
        f.at(c, mc) += std::conj(amp) * d[c];
    }
}

}  // namespace

QSpectrum QSpectrum::power_law(const SpacePtr& space, double trace_target, double gamma) {
    if (!(trace_target >= 0.0)) throw std::invalid_argument("QSpectrum: trace must be >= 0");
    QSpectrum qs;
    qs.space = space;
    const int npol = space->n_polarizations();
    qs.q.assign(static_cast<std::size_t>(space->n_retained()) * npol, 0.0);
    double raw_sum = 0.0;
    for (int m = 0; m < space->n_retained(); ++m) {
        double w = std::pow(space->lambda(m), -gamma / 2.0);  // |k|^{-gamma}
        for (int p = 0; p < npol; ++p) {
            qs.q[static_cast<std::size_t>(m) * npol + p] = w;
            raw_sum += w;
        }
    }
    double c = raw_sum > 0.0 ? trace_target / raw_sum : 0.0;
    for (auto& v : qs.q) v *= c;
    qs.trace = trace_target;
    return qs;
}

RealModeCoeff real_mode_coeff(const SpectralField& u, int rep_mode, int pol) {
    const SpectralSpace& sp = u.space();
    const auto& d = sp.polarization(rep_mode, pol);
    std::complex<double> ud(0.0, 0.0);
    for (int c = 0; c < sp.dim(); ++c) ud += u.at(c, rep_mode) * d[c];
    const double scale = std::sqrt(2.0 * sp.cell_volume());
    RealModeCoeff rc;
    rc.c_cos = scale * ud.real();
    rc.c_sin = -scale * ud.imag();
    return rc;
}

NoiseModel NoiseModel::none() {
    NoiseModel m;
    m.kind = Kind::None;
    return m;
}

NoiseModel NoiseModel::additive(QSpectrum spectrum) {
    NoiseModel m;
    m.kind = Kind::Additive;
    m.spectrum = std::move(spectrum);
    return m;
}

NoiseModel NoiseModel::scalar_stationary(double sigma, SpectralField u_star) {
    NoiseModel m;
    m.kind = Kind::ScalarStationary;
    m.sigma = sigma;
    m.u_star = std::move(u_star);
    return m;
}

NoiseModel NoiseModel::linear_diagonal(QSpectrum spectrum, std::vector<double> sigma_k,
                                       SpectralField u_star) {
    NoiseModel m;
    m.kind = Kind::LinearDiagonal;
    m.spectrum = std::move(spectrum);
    m.sigma_k = std::move(sigma_k);
    m.u_star = std::move(u_star);
    if (m.sigma_k.size() != m.spectrum.q.size())
        throw std::invalid_argument("linear_diagonal: sigma_k / spectrum size mismatch");
    return m;
}

double NoiseModel::growth_K() const {
    switch (kind) {
        case Kind::None:
            return 0.0;
        case Kind::Additive:
            return spectrum.trace;
        case Kind::ScalarStationary:
            return 2.0 * sigma * sigma * std::max(1.0, h2_or_zero(u_star));
        case Kind::LinearDiagonal: {
            double worst = 0.0;
            for (std::size_t i = 0; i < spectrum.q.size(); ++i)
                worst = std::max(worst, spectrum.q[i] * sigma_k[i] * sigma_k[i]);
            return 2.0 * worst * std::max(1.0, h2_or_zero(u_star));
        }
    }
    return 0.0;
}

double NoiseModel::lipschitz_L() const {
    switch (kind) {
        case Kind::None:
            return 0.0;
        case Kind::Additive:
            return 0.0;
        case Kind::ScalarStationary:
            return sigma * sigma;
        case Kind::LinearDiagonal: {
            double worst = 0.0;
            for (std::size_t i = 0; i < spectrum.q.size(); ++i)
                worst = std::max(worst, spectrum.q[i] * sigma_k[i] * sigma_k[i]);
            return worst;
        }
    }
    return 0.0;
}

std::string NoiseModel::kind_name() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::Additive: return "additive";
        case Kind::ScalarStationary: return "scalar_stationary";
        case Kind::LinearDiagonal: return "linear_diagonal";
    }
    return "?";
}

WienerIncrement sample_increment(const NoiseModel& model, const SpacePtr& space, double dt,
                                 const GaussianStream& stream, std::uint64_t step) {
    if (dt < 0.0) throw std::invalid_argument("sample_increment: dt must be >= 0");
    WienerIncrement inc;
    inc.dt = dt;
    if (model.kind == NoiseModel::Kind::None) return inc;

    const double sdt = std::sqrt(dt);
    if (model.kind == NoiseModel::Kind::ScalarStationary) {
        double z = stream.normal(step, 0);
        inc.raw.push_back(z);
        inc.scalar = sdt * z;
        return inc;
    }

    inc.field = SpectralField(space);
    const int npol = space->n_polarizations();
    const auto& reps = space->pair_representatives();
    inc.raw.reserve(reps.size() * npol * 2);
    std::uint64_t slot = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        int m = reps[i];
        for (int p = 0; p < npol; ++p) {
            double a = stream.normal(step, slot++);
            double b = stream.normal(step, slot++);
            inc.raw.push_back(a);
            inc.raw.push_back(b);
            double amp = std::sqrt(model.spectrum.at(m, p)) * sdt;
            add_real_mode(inc.field, m, p, amp * a, amp * b);
        }
    }
    return inc;
}

SpectralField phi_apply_increment(const NoiseModel& model, double /*t*/, const SpectralField& u,
                                  const WienerIncrement& incr) {
    switch (model.kind) {
        case NoiseModel::Kind::None: {
            SpectralField z(u.space_ptr());
            return z;
        }
        case NoiseModel::Kind::Additive: {
            if (!incr.field.space().same_as(u.space()))
                throw std::invalid_argument("phi_apply_increment: space mismatch");
            return incr.field;
        }
        case NoiseModel::Kind::ScalarStationary: {
            SpectralField dev = u;
            if (!model.u_star.empty()) dev -= model.u_star;
            dev.scale(model.sigma * incr.scalar);
            return dev;
        }
        case NoiseModel::Kind::LinearDiagonal: {
            if (!incr.field.space().same_as(u.space()))
                throw std::invalid_argument("phi_apply_increment: space mismatch");
            SpectralField dev = u;
            if (!model.u_star.empty()) dev -= model.u_star;
            SpectralField out(u.space_ptr());
            const SpectralSpace& sp = u.space();
            const int npol = sp.n_polarizations();
            for (int m : sp.pair_representatives()) {
                for (int p = 0; p < npol; ++p) {
                    double s = model.sigma_k[static_cast<std::size_t>(m) * npol + p];
                    RealModeCoeff cu = real_mode_coeff(dev, m, p);
                    RealModeCoeff cw = real_mode_coeff(incr.field, m, p);
                    add_real_mode(out, m, p, s * cu.c_cos * cw.c_cos, s * cu.c_sin * cw.c_sin);
                }
            }
            return out;
        }
    }
    throw std::logic_error("phi_apply_increment: unknown noise kind");
}

double hs_norm_sq(const NoiseModel& model, double /*t*/, const SpectralField& u) {
    switch (model.kind) {
        case NoiseModel::Kind::None:
            return 0.0;
        case NoiseModel::Kind::Additive:
            return model.spectrum.trace;
        case NoiseModel::Kind::ScalarStationary: {
            SpectralField dev = u;
            if (!model.u_star.empty()) dev -= model.u_star;
            return model.sigma * model.sigma * h_norm_sq(dev);
        }
        case NoiseModel::Kind::LinearDiagonal: {
            SpectralField dev = u;
            if (!model.u_star.empty()) dev -= model.u_star;
            const SpectralSpace& sp = u.space();
            const int npol = sp.n_polarizations();
            double acc = 0.0;
            for (int m : sp.pair_representatives()) {
                for (int p = 0; p < npol; ++p) {
                    std::size_t i = static_cast<std::size_t>(m) * npol + p;
                    RealModeCoeff c = real_mode_coeff(dev, m, p);
                    acc += model.spectrum.q[i] * model.sigma_k[i] * model.sigma_k[i] *
                           (c.c_cos * c.c_cos + c.c_sin * c.c_sin);
                }
            }
            return acc;
        }
    }
    return 0.0;
}

double hs_norm_sq_gradient(const NoiseModel& model, double /*t*/, const SpectralField& u) {
    switch (model.kind) {
        case NoiseModel::Kind::None:
            return 0.0;
        case NoiseModel::Kind::Additive: {
            const SpectralSpace& sp = *model.spectrum.space;
            const int npol = sp.n_polarizations();
            double acc = 0.0;
            for (int m = 0; m < sp.n_retained(); ++m)
                for (int p = 0; p < npol; ++p) acc += sp.lambda(m) * model.spectrum.at(m, p);
            return acc;
        }
        case NoiseModel::Kind::ScalarStationary: {
            SpectralField dev = u;
            if (!model.u_star.empty()) dev -= model.u_star;
            return model.sigma * model.sigma * v_norm_sq(dev);
        }
        case NoiseModel::Kind::LinearDiagonal: {
            SpectralField dev = u;
            if (!model.u_star.empty()) dev -= model.u_star;
            const SpectralSpace& sp = u.space();
            const int npol = sp.n_polarizations();
            double acc = 0.0;
            for (int m : sp.pair_representatives()) {
                for (int p = 0; p < npol; ++p) {
                    std::size_t i = static_cast<std::size_t>(m) * npol + p;
                    RealModeCoeff c = real_mode_coeff(dev, m, p);
                    acc += sp.lambda(m) * model.spectrum.q[i] * model.sigma_k[i] *
                           model.sigma_k[i] * (c.c_cos * c.c_cos + c.c_sin * c.c_sin);
                }
            }
            return acc;
        }
    }
    return 0.0;
}

}  // namespace scbf
