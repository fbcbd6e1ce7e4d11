#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "scbf/norms.hpp"
#include "scbf/operators.hpp"
#include "scbf/snapshot.hpp"

using namespace scbf;

namespace {
const double kPi = 3.14159265358979323846;

SpectralField rnd16(std::uint32_t tag, double amp = 1.0) {
    static SpacePtr sp = SpectralSpace::make(2, 16);
    RandomFieldLaw law;
    law.seed = 31415;
    law.amplitude = amp;
    return random_field(sp, law, tag);
}
}  // namespace

TEST_CASE("space: retained lattice, lambda1, symmetry, polarizations") {
    auto sp = SpectralSpace::make(2, 16);
    CHECK(sp->lambda1() == 1.0);
    CHECK(sp->kmax() == 7);
    CHECK(sp->n_retained() == 15 * 15 - 1);
    CHECK(sp->index_of(0, 0, 0) == -1);   // zero mean: mode 0 excluded
    CHECK(sp->index_of(8, 0, 0) == -1);   // Nyquist excluded
    double lmin = 1e9;
    for (int m = 0; m < sp->n_retained(); ++m) {
        lmin = std::min(lmin, sp->lambda(m));
        int mc = sp->conj_index(m);  // closed under k -> -k
        const auto& k = sp->mode(m);
        const auto& kc = sp->mode(mc);
        CHECK(k[0] == -kc[0]);
        CHECK(k[1] == -kc[1]);
        // polarization orthogonal to k, unit length
        const auto& d = sp->polarization(m, 0);
        CHECK(std::abs(k[0] * d[0] + k[1] * d[1]) < 1e-14);
        CHECK(std::abs(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] - 1.0) < 1e-14);
    }
    CHECK(lmin == 1.0);
    CHECK(2 * static_cast<int>(sp->pair_representatives().size()) == sp->n_retained());

    auto sp3 = SpectralSpace::make(3, 8);
    for (int m = 0; m < sp3->n_retained(); ++m) {
        const auto& k = sp3->mode(m);
        for (int p = 0; p < 2; ++p) {
            const auto& d = sp3->polarization(m, p);
            CHECK(std::abs(k[0] * d[0] + k[1] * d[1] + k[2] * d[2]) < 1e-13);
        }
        // the two polarizations are orthonormal
        const auto& d0 = sp3->polarization(m, 0);
        const auto& d1 = sp3->polarization(m, 1);
        CHECK(std::abs(d0[0] * d1[0] + d0[1] * d1[1] + d0[2] * d1[2]) < 1e-13);
    }
}

TEST_CASE("random fields satisfy all SpectralField invariants") {
    for (std::uint32_t tag = 0; tag < 8; ++tag) {
        SpectralField u = rnd16(tag);
        CHECK(u.divergence_defect() < 1e-13);
        CHECK(u.hermitian_defect() < 1e-14);
    }
}

TEST_CASE("cos(x1)e2: ||u||_H^2 = 2 pi^2 and ||u||_L4^4 = 3 pi^2 / 2") {
    auto sp = SpectralSpace::make(2, 16);
    SpectralField u(sp);
    int m = sp->index_of(1, 0, 0);
    int mc = sp->conj_index(m);
    u.at(1, m) = 0.5;   // cos(x1) in component 2
    u.at(1, mc) = 0.5;
    CHECK(h_norm_sq(u) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-13));
    CHECK(v_norm_sq(u) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-13));
    // int cos^4 = (3/8)(2pi)(2pi) = 1.5 pi^2 ~ 14.804
    CHECK(lp_integral(u, 4.0) == doctest::Approx(1.5 * kPi * kPi).epsilon(1e-13));
    CHECK(std::pow(lp_norm(u, 4.0), 4.0) == doctest::Approx(1.5 * kPi * kPi).epsilon(1e-12));
}

TEST_CASE("transforms: single mode equals cos at grid points; round trip identity") {
    auto sp = SpectralSpace::make(2, 16);
    SpectralField u = shear_mode(sp, 1, 0, 0, 1.0);
    PhysicalField ph = to_physical(u, 1.5);
    const int gn = ph.grid_n;
    // shear_mode polarization of k=(1,0) is (0,1): u = cos(x1) e2
    for (int i = 0; i < gn; ++i) {
        double x1 = 2.0 * kPi * i / gn;
        CHECK(ph.component(1)[static_cast<std::size_t>(i) * gn] ==
              doctest::Approx(std::cos(x1)).epsilon(1e-12));
        CHECK(std::abs(ph.component(0)[static_cast<std::size_t>(i) * gn]) < 1e-13);
    }

    SpectralField z(sp);
    PhysicalField zph = to_physical(z, 1.5);
    for (double v : zph.values) CHECK(v == 0.0);

    for (std::uint32_t tag = 0; tag < 5; ++tag) {
        SpectralField w = rnd16(tag + 50);
        SpectralField w2 = to_spectral(to_physical(w, 2.0), w.space_ptr());
        CHECK(std::sqrt(h_norm_sq(w2 - w) / h_norm_sq(w)) < 1e-13);
    }
}

TEST_CASE("parseval: collocation quadrature of |u|^2 matches h_norm_sq") {
    for (std::uint32_t tag = 0; tag < 6; ++tag) {
        SpectralField u = rnd16(tag + 70);
        double h2 = h_norm_sq(u);
        CHECK(std::abs(lp_integral(u, 2.0) - h2) <= 1e-12 * h2);
    }
}

TEST_CASE("poincare with lambda1 = 1") {
    for (std::uint32_t tag = 0; tag < 10; ++tag) {
        SpectralField u = rnd16(tag + 90);
        CHECK(v_norm_sq(u) >= h_norm_sq(u) * (1.0 - 1e-14));
    }
}

TEST_CASE("lp interpolation inequality on even-integer triples") {
    for (std::uint32_t tag = 0; tag < 6; ++tag) {
        SpectralField u = rnd16(tag + 110, 0.7);
        // 1/4 = theta/2 + (1-theta)/6 -> theta = 1/4... solve generally
        struct T { double s, r, t; } triples[] = {{2, 4, 6}, {2, 6, 10}, {4, 6, 8}};
        for (auto tr : triples) {
            double th = (1.0 / tr.r - 1.0 / tr.t) / (1.0 / tr.s - 1.0 / tr.t);
            double lhs = lp_norm(u, tr.r);
            double rhs = std::pow(lp_norm(u, tr.s), th) * std::pow(lp_norm(u, tr.t), 1 - th);
            CHECK(lhs <= rhs + 1e-10);
        }
    }
}

TEST_CASE("leray: idempotent, kills gradients, commutes with stokes") {
    auto sp = SpectralSpace::make(2, 8);
    SpectralField v = rnd16(1);  // build a non-solenoidal input on 8^2
    auto sp8 = SpectralSpace::make(2, 8);
    RandomFieldLaw law;
    law.seed = 7;
    SpectralField u8 = random_field(sp8, law, 3);
    SpectralField grad(sp8);
    for (int m = 0; m < sp8->n_retained(); ++m) {
        const auto& k = sp8->mode(m);
        std::complex<double> g(0.4, -0.2 * k[1]);
        for (int c = 0; c < 2; ++c) grad.at(c, m) = g * double(k[c]);
    }
    grad.enforce_hermitian();
    SpectralField pg = leray_project(grad);
    CHECK(std::sqrt(h_norm_sq(pg)) <= 1e-14 * std::sqrt(h_norm_sq(grad)));

    SpectralField mixed = u8 + grad;
    SpectralField p1 = leray_project(mixed);
    SpectralField p2 = leray_project(p1);
    CHECK(std::sqrt(h_norm_sq(p2 - p1)) <= 1e-14 * std::sqrt(h_norm_sq(p1)));
    CHECK(std::sqrt(h_norm_sq(p1 - u8)) <= 1e-13 * std::sqrt(h_norm_sq(u8)));

    SpectralField a = stokes_apply(leray_project(mixed));
    SpectralField b = leray_project(stokes_apply(mixed));
    CHECK(std::sqrt(h_norm_sq(a - b)) <= 1e-13 * std::sqrt(h_norm_sq(a)));
}

TEST_CASE("stokes eigenvalues: k=(1,0) fixed, k=(2,1) scaled by 5") {
    auto sp = SpectralSpace::make(2, 16);
    SpectralField u1 = shear_mode(sp, 1, 0, 0, 1.0);
    SpectralField a1 = stokes_apply(u1);
    CHECK(std::sqrt(h_norm_sq(a1 - u1)) < 1e-14);

    SpectralField u2 = shear_mode(sp, 2, 1, 0, 1.0);
    SpectralField a2 = stokes_apply(u2);
    SpectralField five = 5.0 * u2;
    CHECK(std::sqrt(h_norm_sq(a2 - five)) < 1e-13);

    // <A u, u> = ||u||_V^2
    for (std::uint32_t tag = 0; tag < 4; ++tag) {
        SpectralField u = rnd16(tag + 130);
        CHECK(inner_h(stokes_apply(u), u) == doctest::Approx(v_norm_sq(u)).epsilon(1e-13));
    }
}

TEST_CASE("smoothing projection: cutoff, contraction, large-n limit") {
    auto sp = SpectralSpace::make(2, 16);
    SpectralField u1 = shear_mode(sp, 1, 0, 0, 1.0);  // lambda = 1
    // n = 1: lambda = 1 >= n^2 = 1, so the mode is zeroed
    SpectralField s1 = smoothing_projection(u1, 1.0);
    CHECK(h_norm_sq(s1) == 0.0);
    // n = 2: lambda = 1 < 4, weight e^{-1/2}
    SpectralField s2 = smoothing_projection(u1, 2.0);
    CHECK(std::sqrt(h_norm_sq(s2) / h_norm_sq(u1)) == doctest::Approx(std::exp(-0.5)).epsilon(1e-13));

    for (std::uint32_t tag = 0; tag < 6; ++tag) {
        SpectralField u = rnd16(tag + 150);
        for (double n : {0.7, 1.5, 3.0, 9.0}) {
            SpectralField pu = smoothing_projection(u, n);
            CHECK(h_norm_sq(pu) <= h_norm_sq(u) * (1 + 1e-14));
            CHECK(v_norm_sq(pu) <= v_norm_sq(u) * (1 + 1e-14));
        }
        SpectralField pu = smoothing_projection(u, 1e9);
        CHECK(std::sqrt(h_norm_sq(pu - u) / h_norm_sq(u)) < 1e-6);  // weights -> 1
    }
}

TEST_CASE("snapshot round trip and header validation") {
    SpectralField u = rnd16(200);
    const char* path = "/tmp/scbf_test_snapshot.scbf";
    save_snapshot(u, path);
    SpectralField v = load_snapshot(path, u.space_ptr());
    CHECK(h_norm_sq(v - u) == 0.0);  // bit-exact
    SpectralField w = load_snapshot(path);  // self-describing header
    CHECK(h_norm_sq(w - u) == 0.0);

    auto sp3 = SpectralSpace::make(3, 8);
    CHECK_THROWS(load_snapshot(path, sp3));  // header mismatch

    dump_snapshot_text(u, "/tmp/scbf_test_snapshot.txt");
    std::FILE* f = std::fopen("/tmp/scbf_test_snapshot.txt", "r");
    REQUIRE(f != nullptr);
    int kx, ky, kz, comp;
    double re, im;
    CHECK(std::fscanf(f, "%d %d %d %d %lf %lf", &kx, &ky, &kz, &comp, &re, &im) == 6);
    std::fclose(f);
}

TEST_CASE("a_power_norm realizes the dual norm") {
    SpectralField u = rnd16(300);
    // ||A^{-1/2} A^{1/2} u||_H = ||u||_H
    SpectralField half = stokes_power_apply(u, 0.5);
    CHECK(a_power_norm_sq(half, -0.5) == doctest::Approx(h_norm_sq(u)).epsilon(1e-13));
    // <A u, u> = ||u||_V^2 = ||A^{1/2}u||_H^2
    CHECK(h_norm_sq(half) == doctest::Approx(v_norm_sq(u)).epsilon(1e-13));
}
