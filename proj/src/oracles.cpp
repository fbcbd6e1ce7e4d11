#include "scbf/oracles.hpp"

#include <complex>
#include <stdexcept>

namespace scbf {
namespace {

void cost_guard(const SpectralSpace& sp, const char* who) {
    if (sp.n_modes() > 8)
        throw std::invalid_argument(std::string(who) + ": oracle restricted to n_modes <= 8");
}

}  // namespace

SpectralField convolution_oracle_B(const SpectralField& u, const SpectralField& v) {
    const SpectralSpace& sp = u.space();
    cost_guard(sp, "convolution_oracle_B");
    const int d = sp.dim();
    const int nm = sp.n_retained();
    SpectralField out(u.space_ptr());
    for (int mp = 0; mp < nm; ++mp) {
        for (int mq = 0; mq < nm; ++mq) {
            const auto& p = sp.mode(mp);
            const auto& q = sp.mode(mq);
            int mk = sp.index_of(p[0] + q[0], p[1] + q[1], p[2] + q[2]);
            if (mk < 0) continue;
            // (u.grad)v_j at wavevector p+q: uhat_i(p) * (i q_i) * vhat_j(q)
            std::complex<double> udotq(0.0, 0.0);
            for (int i = 0; i < d; ++i) udotq += u.at(i, mp) * double(q[i]);
            std::complex<double> factor = std::complex<double>(0.0, 1.0) * udotq;
            for (int j = 0; j < d; ++j) out.at(j, mk) += factor * v.at(j, mq);
        }
    }
    out.project_divergence_free();
    out.enforce_hermitian();
    return out;
}

SpectralField pointwise_oracle_C(const SpectralField& u, double r) {
    const SpectralSpace& sp = u.space();
    cost_guard(sp, "pointwise_oracle_C");
    const int gn = sp.grid_size(8.0);
    PhysicalField up = to_physical(u, 8.0);
    const std::size_t pts = up.points();
    std::vector<double> s = pointwise_abs2(up);
    SpectralField out(u.space_ptr());
    std::vector<double> cphys(pts);
    std::vector<std::complex<double>> chat(sp.n_retained());
    const double e = (r - 1.0) / 2.0;
    for (int c = 0; c < sp.dim(); ++c) {
        for (std::size_t x = 0; x < pts; ++x)
            cphys[x] = std::pow(s[x], e) * up.component(c)[x];
        scalar_to_spectral(sp, cphys.data(), gn, chat.data());
        for (int m = 0; m < sp.n_retained(); ++m) out.at(c, m) = chat[m];
    }
    out.project_divergence_free();
    out.enforce_hermitian();
    return out;
}

double trilinear_oracle(const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    const SpectralSpace& sp = u.space();
    cost_guard(sp, "trilinear_oracle");
    const int d = sp.dim();
    const int nm = sp.n_retained();
    // int (u.grad v).w dx = (2pi)^d sum_{p+q+s=0} uhat_i(p) (i q_i) vhat_j(q) what_j(s)
    std::complex<double> acc(0.0, 0.0);
    for (int mp = 0; mp < nm; ++mp) {
        for (int mq = 0; mq < nm; ++mq) {
            const auto& p = sp.mode(mp);
            const auto& q = sp.mode(mq);
            int ms = sp.index_of(-(p[0] + q[0]), -(p[1] + q[1]), -(p[2] + q[2]));
            if (ms < 0) continue;
            std::complex<double> udotq(0.0, 0.0);
            for (int i = 0; i < d; ++i) udotq += u.at(i, mp) * double(q[i]);
            std::complex<double> vw(0.0, 0.0);
            for (int j = 0; j < d; ++j) vw += v.at(j, mq) * w.at(j, ms);
            acc += std::complex<double>(0.0, 1.0) * udotq * vw;
        }
    }
    return sp.cell_volume() * acc.real();
}

SpectralField leray_oracle(const SpectralField& v) {
    const SpectralSpace& sp = v.space();
    cost_guard(sp, "leray_oracle");
    const int d = sp.dim();
    SpectralField out(v.space_ptr());
    // KKT system for min ||x - b||^2 s.t. k.x = 0:  [I k; k^T 0][x; l] = [b; 0],
    // solved by Gaussian elimination separately for re and im parts.
    const int n = d + 1;
    for (int m = 0; m < sp.n_retained(); ++m) {
        const auto& k = sp.mode(m);
        for (int part = 0; part < 2; ++part) {
            double A[4][5] = {};  // max (d+1) x (d+2) augmented
            for (int i = 0; i < d; ++i) {
                A[i][i] = 1.0;
                A[i][d] = k[i];
                A[i][n] = part == 0 ? v.at(i, m).real() : v.at(i, m).imag();
            }
            for (int j = 0; j < d; ++j) A[d][j] = k[j];
            A[d][d] = 0.0;
            A[d][n] = 0.0;
            // partial-pivot elimination on the (d+1)x(d+1) system
            for (int col = 0; col < n; ++col) {
                int piv = col;
                for (int row = col + 1; row < n; ++row)
                    if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
                for (int j = 0; j <= n; ++j) std::swap(A[col][j], A[piv][j]);
                for (int row = 0; row < n; ++row) {
                    if (row == col || A[col][col] == 0.0) continue;
                    double f = A[row][col] / A[col][col];
                    for (int j = col; j <= n; ++j) A[row][j] -= f * A[col][j];
                }
            }
            for (int i = 0; i < d; ++i) {
                double xi = A[i][n] / A[i][i];
                std::complex<double> cur = out.at(i, m);
                out.at(i, m) = part == 0 ? std::complex<double>(xi, cur.imag())
                                         : std::complex<double>(cur.real(), xi);
            }
        }
    }
    return out;
}

}  // namespace scbf
