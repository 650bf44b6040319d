#include <cmath>
#include <random>

#include "doctest.h"
#include "gupjc/gup.hpp"

using namespace gupjc;
using constants::hbar;

namespace {

GupCoefficients random_coefficients(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const double gamma = std::pow(10.0, std::uniform_real_distribution<double>(-2, 4)(rng));
    const double omega = std::pow(10.0, std::uniform_real_distribution<double>(9, 17)(rng));
    return derive_coefficients(GupParams::from_gamma(gamma, u(rng), u(rng)), omega);
}

}  // namespace

TEST_SUITE("gup") {

TEST_CASE("gamma conversion") {
    CHECK(gamma_conversion_factor() == doctest::Approx(4.4e4).epsilon(1e-2));
    const GupParams p = GupParams::from_gamma0(4.4e4, 1, 1);
    CHECK(p.gamma == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(GupParams::from_gamma(1e3, 1, 1).gamma == doctest::Approx(1e3).epsilon(1e-14));
    CHECK_THROWS_AS(GupParams::from_gamma0(-1.0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(GupParams::from_gamma0(1.0, NAN, 1), std::invalid_argument);
}

TEST_CASE("derived coefficients") {
    const GupCoefficients zero = derive_coefficients(GupParams::from_gamma(0.0, 1, 1), 1e15);
    CHECK(zero.phi == 0.0);
    CHECK(zero.chi == 0.0);
    CHECK(zero.beta == 0.0);
    CHECK(zero.xi_mag == 0.0);

    const double omega = 3e14;
    const double gamma = 20.0;
    const double s = hbar * omega * gamma * gamma;
    const GupCoefficients kmm = derive_coefficients(GupParams::from_gamma(gamma, 0.0, 0.25), omega);
    CHECK(kmm.phi == doctest::Approx(-s / 2).epsilon(1e-13));
    CHECK(kmm.chi == doctest::Approx(-s / 8).epsilon(1e-13));
    CHECK(kmm.beta == doctest::Approx(-s / 4).epsilon(1e-13));
    CHECK(8 * kmm.chi == doctest::Approx(-s).epsilon(1e-13));
    CHECK(kmm.xi_mag == 0.0);

    const GupCoefficients fig1 = derive_coefficients(GupParams::from_gamma(1e3, 1, 1), 1e15);
    CHECK(fig1.phi == doctest::Approx(1.054571817e-13).epsilon(1e-6));
    CHECK(fig1.chi == 0.0);
    CHECK(fig1.beta == doctest::Approx(-fig1.phi / 2).epsilon(1e-14));
    CHECK(fig1.xi_mag == doctest::Approx(1e3 * std::sqrt(2 * hbar * 1e15)).epsilon(1e-14));
    CHECK(fig1.xi() == cplx{0.0, fig1.xi_mag});

    CHECK_THROWS_AS(derive_coefficients(GupParams::from_gamma(1, 1, 1), 0.0), std::invalid_argument);
}

TEST_CASE("coefficient identity over random draws") {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const GupCoefficients c = random_coefficients(rng);
        const double scale = std::max({std::abs(c.phi), std::abs(c.chi), std::abs(c.beta)});
        worst = std::max(worst, std::abs(8 * c.chi - (c.phi + 2 * c.beta)) / scale);
    }
    CHECK(worst < 1e-15);
}

TEST_CASE("coefficients are invariant under rescaling hbar*omega against gamma^2") {
    const GupParams p = GupParams::from_gamma(7.0, 0.8, 1.3);
    const GupParams q = GupParams::from_gamma(7.0 / std::sqrt(1e3), 0.8, 1.3);
    const GupCoefficients a = derive_coefficients(p, 2e13);
    const GupCoefficients b = derive_coefficients(q, 2e16);
    CHECK(a.phi == doctest::Approx(b.phi).epsilon(1e-13));
    CHECK(a.chi == doctest::Approx(b.chi).epsilon(1e-13));
    CHECK(a.beta == doctest::Approx(b.beta).epsilon(1e-13));
    CHECK(a.xi_mag == doctest::Approx(b.xi_mag).epsilon(1e-13));
}

TEST_CASE("length scale bounds") {
    const auto planck = length_scale_bounds(GupParams::from_gamma0(1.0, 1, 1));
    CHECK(planck.length_scale == doctest::Approx(1.616255e-35));
    CHECK(planck.gamma_upper_ok);
    const auto ew = length_scale_bounds(GupParams::from_gamma0(1e8, 1, 1));
    CHECK(ew.length_scale == doctest::Approx(1.616255e-19));
    CHECK(ew.gamma_upper_ok);
    CHECK_FALSE(length_scale_bounds(GupParams::from_gamma0(1e9, 1, 1)).gamma_upper_ok);
}

TEST_CASE("interaction config") {
    const InteractionConfig cfg(10.0, 12.5, 0.3);
    CHECK(cfg.detuning() == 2.5);
    CHECK(cfg.mu() == doctest::Approx(0.09 / 2.5));
    CHECK_THROWS_AS(InteractionConfig(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(InteractionConfig(1.0, 1.0, 1.0).mu(), std::domain_error);
}

TEST_CASE("full interaction at gamma = 0 is the dipole term") {
    const int ncut = 6;
    const InteractionConfig cfg(5.0, 5.5, 0.7);
    const OperatorMatrix h = build_full_interaction_hamiltonian(cfg, GupCoefficients{}, ncut);
    const OperatorMatrix x{ncut, false, build_annihilation(ncut).m + build_creation(ncut).m};
    const Eigen::Matrix2cd sx = sigma_plus() + sigma_minus();
    CHECK((h.m - 0.7 * tensor_with_atom(sx, x).m).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(build_full_interaction_hamiltonian(cfg, GupCoefficients{}, 2), std::invalid_argument);
}

TEST_CASE("full interaction matrix elements") {
    const int ncut = 8;
    const InteractionConfig cfg(5.0, 5.5, 0.7);
    const GupCoefficients c = GupCoefficients::synthetic(0.03, 0.01, 0.2, 5.0);
    const OperatorMatrix h = build_full_interaction_hamiltonian(cfg, c, ncut);
    for (int n = 0; n + 2 <= ncut; ++n) {
        const double m = n + 1.0;
        const cplx two = h.m(atom_field_index(Atom::ground, n + 2, ncut), atom_field_index(Atom::excited, n, ncut));
        CHECK(std::abs(two - (-0.7 * c.xi() * std::sqrt(m * (m + 1)))) < 1e-14);
        const cplx one = h.m(atom_field_index(Atom::ground, n + 1, ncut), atom_field_index(Atom::excited, n, ncut));
        CHECK(std::abs(one - 0.7 * (std::sqrt(m) - m * std::sqrt(m) * c.phi)) < 1e-14);
        if (n >= 1) {
            const cplx counter = h.m(atom_field_index(Atom::ground, n - 1, ncut), atom_field_index(Atom::excited, n, ncut));
            CHECK(std::abs(counter - 0.7 * std::sqrt(double(n))) < 1e-14);
        }
    }
}

TEST_CASE("Hamiltonians are Hermitian for random parameters") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        const GupCoefficients c = random_coefficients(rng);
        const InteractionConfig cfg(c.omega, c.omega * 1.3, 1.0);
        CHECK(build_full_interaction_hamiltonian(cfg, c, 10).hermiticity_residual() < 1e-12);
        CHECK(build_full_hamiltonian(cfg, c, 10).is_hermitian());
        CHECK(build_rwa_hamiltonian(cfg, c, 10).is_hermitian());
        CHECK(build_rwa_hamiltonian(cfg, c, 10, Frame::rotating).is_hermitian());
    }
}

TEST_CASE("RWA Hamiltonian structure") {
    const int ncut = 7;
    const InteractionConfig cfg(4.0, 4.0, 0.5);
    const GupCoefficients c = GupCoefficients::synthetic(0.02, 0.005, 0.1, 4.0);
    const OperatorMatrix h = build_rwa_hamiltonian(cfg, c, ncut);
    for (int n = 0; n <= ncut; ++n) {
        const double field = 4.0 * (n - 4.0 * (n * n + n) * c.chi - c.beta);
        CHECK(h.m(n, n).real() == doctest::Approx(-2.0 + field).epsilon(1e-14));
        CHECK(h.m(ncut + 1 + n, ncut + 1 + n).real() == doctest::Approx(2.0 + field).epsilon(1e-14));
    }
    for (int n = 0; n < ncut; ++n) {
        const double expected = 0.5 * (std::sqrt(n + 1.0) - std::pow(n + 1.0, 1.5) * c.phi);
        CHECK(h.m(atom_field_index(Atom::ground, n + 1, ncut), atom_field_index(Atom::excited, n, ncut)).real() ==
              doctest::Approx(expected).epsilon(1e-14));
        CHECK(rwa_coupling(n, 0.5, c.phi) == doctest::Approx(expected).epsilon(1e-14));
    }
    int nonzero_offdiag = 0;
    for (Eigen::Index i = 0; i < h.dim(); ++i) {
        for (Eigen::Index j = 0; j < h.dim(); ++j) {
            nonzero_offdiag += (i != j && h.m(i, j) != cplx{}) ? 1 : 0;
        }
    }
    CHECK(nonzero_offdiag == 2 * ncut);
    CHECK_THROWS_AS(build_rwa_hamiltonian(cfg, c, 1), std::invalid_argument);
}

TEST_CASE("standard RWA block splitting at resonance") {
    const int ncut = 6;
    const InteractionConfig cfg(3.0, 3.0, 0.4);
    const OperatorMatrix h = build_rwa_hamiltonian(cfg, GupCoefficients{}, ncut);
    for (int n = 0; n < ncut; ++n) {
        const auto e = atom_field_index(Atom::excited, n, ncut);
        const auto g = atom_field_index(Atom::ground, n + 1, ncut);
        Eigen::Matrix2cd block;
        block << h.m(e, e), h.m(e, g), h.m(g, e), h.m(g, g);
        const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(block).eigenvalues();
        const double center = 0.5 * (ev(0) + ev(1));
        CHECK(ev(1) - center == doctest::Approx(0.4 * std::sqrt(n + 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("RWA equals the full Hamiltonian with dropped blocks zeroed") {
    const int ncut = 9;
    const InteractionConfig cfg(6.0, 6.7, 0.9);
    const GupCoefficients c = GupCoefficients::synthetic(0.01, -0.004, 0.05, 6.0);
    Matrix full = build_full_hamiltonian(cfg, c, ncut).m;
    for (int k = 0; k <= ncut; ++k) {
        for (int j = 0; j <= ncut; ++j) {
            const auto e = atom_field_index(Atom::excited, k, ncut);
            const auto g = atom_field_index(Atom::ground, j, ncut);
            if (j != k + 1) {
                full(e, g) = 0.0;
                full(g, e) = 0.0;
            }
        }
    }
    const Matrix rwa = build_rwa_hamiltonian(cfg, c, ncut).m;
    CHECK((full - rwa).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("rotating frame differs from the lab frame by the frame generator") {
    const int ncut = 5;
    const InteractionConfig cfg(8.0, 8.2, 0.3);
    const GupCoefficients c = GupCoefficients::synthetic(0.01, 0.002, 0.0, 8.0);
    Matrix generator = Matrix::Zero(2 * (ncut + 1), 2 * (ncut + 1));
    for (int k = 0; k <= ncut; ++k) {
        generator(atom_field_index(Atom::ground, k, ncut), atom_field_index(Atom::ground, k, ncut)) = 8.0 * (k - 0.5 - c.beta);
        generator(atom_field_index(Atom::excited, k, ncut), atom_field_index(Atom::excited, k, ncut)) = 8.0 * (k + 0.5 - c.beta);
    }
    const Matrix diff = build_rwa_hamiltonian(cfg, c, ncut).m - build_rwa_hamiltonian(cfg, c, ncut, Frame::rotating).m;
    CHECK((diff - generator).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("coupling blocks are linear in lambda and diagonals independent of it") {
    const int ncut = 6;
    const GupCoefficients c = GupCoefficients::synthetic(0.02, 0.003, 0.1, 5.0);
    for (const auto builder : {+[](const InteractionConfig& cfg, const GupCoefficients& cc) {
                                   return build_full_hamiltonian(cfg, cc, 6).m;
                               },
                               +[](const InteractionConfig& cfg, const GupCoefficients& cc) {
                                   return build_rwa_hamiltonian(cfg, cc, 6).m;
                               }}) {
        const Matrix h1 = builder(InteractionConfig(5.0, 5.4, 0.3), c);
        const Matrix h2 = builder(InteractionConfig(5.0, 5.4, 0.6), c);
        const Matrix d1 = h1.diagonal().asDiagonal();
        const Matrix d2 = h2.diagonal().asDiagonal();
        CHECK((d1 - d2).cwiseAbs().maxCoeff() == 0.0);
        CHECK(((h2 - d2) - 2.0 * (h1 - d1)).cwiseAbs().maxCoeff() < 1e-14);
    }
    (void)ncut;
}

TEST_CASE("modified free field") {
    const GupCoefficients zero{};
    const OperatorMatrix h0 = build_modified_free_field(zero, 2.0, 4);
    for (int n = 0; n <= 4; ++n) {
        CHECK(h0.m(n, n).real() == doctest::Approx(2.0 * (n + 0.5)));
    }
    const GupCoefficients c = GupCoefficients::synthetic(0.01, 0.004, 0.0, 2.0);
    const OperatorMatrix h = build_modified_free_field(c, 2.0, 4);
    CHECK(h.m(0, 0).real() == doctest::Approx(2.0 * (0.5 - c.beta)).epsilon(1e-15));
    const double spacing = (h.m(1, 1) - h.m(0, 0)).real();
    CHECK(spacing == doctest::Approx(2.0 * (1 - 8 * c.chi)).epsilon(1e-14));
    CHECK(spacing == doctest::Approx(2.0 * (1 - c.phi - 2 * c.beta)).epsilon(1e-14));
    CHECK_THROWS_AS(build_modified_free_field(c, 2.0, 0), std::invalid_argument);
}

}
