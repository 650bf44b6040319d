#include "gupjc/gup.hpp"

#include <cmath>
#include <stdexcept>

namespace gupjc {

namespace {

// omega [n - 4 (n^2 + n) chi - beta]; without the lab-frame omega*n term when rotating.
double field_energy(int n, double omega, const GupCoefficients& c, bool include_linear) {
    const double nn = static_cast<double>(n);
    const double quad = 4.0 * (nn * nn + nn) * c.chi;
    return include_linear ? omega * (nn - quad - c.beta) : -omega * quad;
}

}  // namespace

double gamma_conversion_factor() {
    return std::sqrt(constants::planck_mass) * constants::c;
}

GupParams GupParams::from_gamma0(double gamma0, double delta, double epsilon) {
    if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) {
        throw std::invalid_argument("GupParams: gamma0 must be finite and >= 0");
    }
    if (!std::isfinite(delta) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("GupParams: delta and epsilon must be finite");
    }
    return {gamma0, delta, epsilon, gamma0 / gamma_conversion_factor()};
}

GupParams GupParams::from_gamma(double gamma, double delta, double epsilon) {
    return from_gamma0(gamma * gamma_conversion_factor(), delta, epsilon);
}

GupCoefficients GupCoefficients::synthetic(double phi, double chi, double xi_mag, double omega) {
    return {phi, chi, 0.5 * (8.0 * chi - phi), xi_mag, omega};
}

InteractionConfig::InteractionConfig(double omega_, double omega0_, double lambda_)
    : omega(omega_), omega0(omega0_), lambda(lambda_) {
    if (!(omega > 0.0) || !(omega0 > 0.0)) {
        throw std::invalid_argument("InteractionConfig: omega and omega0 must be positive");
    }
}

double InteractionConfig::mu() const {
    const double d = detuning();
    if (d == 0.0) {
        throw std::domain_error("InteractionConfig::mu: zero detuning");
    }
    return lambda * lambda / d;
}

GupCoefficients derive_coefficients(const GupParams& p, double omega) {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("derive_coefficients: omega must be positive");
    }
    const double d2 = p.delta * p.delta;
    const double scale = constants::hbar * omega * p.gamma * p.gamma;
    GupCoefficients c;
    c.phi = scale * (3.0 * d2 - 2.0 * p.epsilon);
    c.chi = 0.5 * scale * (d2 - p.epsilon);
    c.beta = 0.5 * scale * (d2 - 2.0 * p.epsilon);
    c.xi_mag = p.delta * p.gamma * std::sqrt(2.0 * constants::hbar * omega);
    c.omega = omega;
    return c;
}

LengthScaleBounds length_scale_bounds(const GupParams& p) {
    return {p.gamma0 * p.gamma0 * constants::planck_length,
            p.gamma0 <= constants::gamma0_electroweak_bound};
}

OperatorMatrix build_full_interaction_hamiltonian(const InteractionConfig& cfg,
                                                  const GupCoefficients& c, int ncut) {
    if (ncut < 3) {
        throw std::invalid_argument("build_full_interaction_hamiltonian: ncut must be >= 3");
    }
    const Matrix a = build_annihilation(ncut).m;
    const Matrix ad = a.adjoint();
    const Matrix n = build_number(ncut).m;
    const Matrix id = Matrix::Identity(ncut + 1, ncut + 1);

    // sigma_+ {a^dag + a - phi a N + xi a^2} + sigma_- {a + a^dag - phi a^dag (N+1) + xi* a^dag^2}
    const Matrix raise_atom = ad + a - c.phi * a * n + c.xi() * a * a;
    const Matrix lower_atom = a + ad - c.phi * ad * (n + id) + std::conj(c.xi()) * ad * ad;

    OperatorMatrix h = tensor_with_atom(sigma_plus(), {ncut, false, raise_atom});
    h.m += tensor_with_atom(sigma_minus(), {ncut, false, lower_atom}).m;
    h.m *= cfg.lambda;
    return h;
}

OperatorMatrix build_full_hamiltonian(const InteractionConfig& cfg, const GupCoefficients& c,
                                      int ncut) {
    OperatorMatrix h = build_full_interaction_hamiltonian(cfg, c, ncut);
    for (int k = 0; k <= ncut; ++k) {
        const double field = field_energy(k, cfg.omega, c, true);
        h.m(atom_field_index(Atom::ground, k, ncut), atom_field_index(Atom::ground, k, ncut)) +=
            -0.5 * cfg.omega0 + field;
        h.m(atom_field_index(Atom::excited, k, ncut), atom_field_index(Atom::excited, k, ncut)) +=
            0.5 * cfg.omega0 + field;
    }
    return h;
}

double rwa_coupling(int n, double lambda, double phi) {
    const double m = n + 1.0;
    return lambda * (std::sqrt(m) - m * std::sqrt(m) * phi);
}

OperatorMatrix build_rwa_hamiltonian(const InteractionConfig& cfg, const GupCoefficients& c,
                                     int ncut, Frame frame) {
    if (ncut < 2) {
        throw std::invalid_argument("build_rwa_hamiltonian: ncut must be >= 2");
    }
    const bool lab = frame == Frame::lab;
    const double atom_half = 0.5 * (lab ? cfg.omega0 : cfg.detuning());
    Matrix h = Matrix::Zero(2 * (ncut + 1), 2 * (ncut + 1));
    for (int k = 0; k <= ncut; ++k) {
        const auto g = atom_field_index(Atom::ground, k, ncut);
        const auto e = atom_field_index(Atom::excited, k, ncut);
        const double field = field_energy(k, cfg.omega, c, lab);
        h(g, g) = -atom_half + field;
        h(e, e) = atom_half + field;
        if (k < ncut) {
            const auto g_up = atom_field_index(Atom::ground, k + 1, ncut);
            const double coupling = rwa_coupling(k, cfg.lambda, c.phi);
            h(g_up, e) = coupling;
            h(e, g_up) = coupling;
        }
    }
    return {ncut, true, std::move(h)};
}

OperatorMatrix build_modified_free_field(const GupCoefficients& c, double omega, int ncut) {
    if (ncut < 1) {
        throw std::invalid_argument("build_modified_free_field: ncut must be >= 1");
    }
    Matrix h = Matrix::Zero(ncut + 1, ncut + 1);
    for (int k = 0; k <= ncut; ++k) {
        h(k, k) = field_energy(k, omega, c, true) + 0.5 * omega;
    }
    return {ncut, false, std::move(h)};
}

}  // namespace gupjc
