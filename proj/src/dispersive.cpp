#include "gupjc/dispersive.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gupjc/errors.hpp"
#include "gupjc/integrate.hpp"

namespace gupjc {

namespace {

// Closed form of E_{e,n} - E_{g,n+1} for the RWA free terms.
double lowering_frequency(int n, const InteractionConfig& cfg, const GupCoefficients& c) {
    return cfg.detuning() + 8.0 * cfg.omega * c.chi * (n + 1.0);
}

// Phase exp(-i E t) for the effective Hamiltonian, with the linear part split
// off so large mu*t*n stays exact.
cplx effective_phase(Atom atom, int n, double mu, double phi, double t) {
    const double mut = mu * t;
    if (atom == Atom::ground) {
        const double nn = n;
        return std::polar(1.0, mut * nn) * std::polar(1.0, -2.0 * phi * mut * nn * nn);
    }
    const double m = n + 1.0;
    return std::polar(1.0, -mut * m) * std::polar(1.0, 2.0 * phi * mut * m * m);
}

}  // namespace

DispersiveConfig DispersiveConfig::make(const InteractionConfig& cfg, const GupCoefficients& c,
                                        cplx alpha, double t, int ncut) {
    return {cfg.mu(), c.phi, alpha, t, ncut};
}

double DispersiveConfig::n2_moment() const {
    const double x = std::norm(alpha);
    return x * x + x;
}

double DispersiveConfig::linearity_parameter() const {
    return 2.0 * std::abs(phi * mu * t) * n2_moment();
}

double DispersiveConfig::time_bound() const { return dispersive_time_bound(mu, phi); }

double dispersive_time_bound(double mu, double phi) { return 1.0 / std::abs(phi * mu); }

void check_dispersive_regime(const InteractionConfig& cfg, int ncut) {
    const double ratio = std::abs(cfg.detuning()) / (std::abs(cfg.lambda) * std::sqrt(ncut));
    if (!(ratio >= kDispersiveRatio)) {
        throw DispersiveRegimeError("detuning / (lambda sqrt(ncut)) = " + std::to_string(ratio) +
                                    " is below " + std::to_string(kDispersiveRatio));
    }
}

double effective_energy(Atom atom, int n, double mu, double phi) {
    const double nn = n;
    const double common = nn - 2.0 * nn * nn * phi;
    if (atom == Atom::ground) {
        return -mu * common;
    }
    return mu * (common + 1.0 - 2.0 * phi - 4.0 * nn * phi);
}

OperatorMatrix build_effective_hamiltonian(const InteractionConfig& cfg,
                                           const GupCoefficients& c, int ncut) {
    check_dispersive_regime(cfg, ncut);
    const double mu = cfg.mu();
    Matrix h = Matrix::Zero(2 * (ncut + 1), 2 * (ncut + 1));
    for (int n = 0; n <= ncut; ++n) {
        for (const Atom atom : {Atom::ground, Atom::excited}) {
            const auto i = atom_field_index(atom, n, ncut);
            h(i, i) = effective_energy(atom, n, mu, c.phi);
        }
    }
    return {ncut, true, std::move(h)};
}

LadderPair build_dressed_ladder(double phi, int ncut) {
    const OperatorMatrix a = build_annihilation(ncut);
    const Matrix ad = a.m.adjoint();
    const Matrix n = build_number(ncut).m;
    const Matrix id = Matrix::Identity(ncut + 1, ncut + 1);
    return {tensor_with_atom(sigma_plus(), {ncut, false, a.m * (id - phi * n)}),
            tensor_with_atom(sigma_minus(), {ncut, false, ad * (id - phi * (n + id))})};
}

CommutatorCheck commutator_check(const InteractionConfig& cfg, const GupCoefficients& c,
                                 int ncut) {
    if (ncut < 3) {
        throw std::invalid_argument("commutator_check: ncut must be >= 3");
    }
    const double mu = cfg.mu();
    const LadderPair ladder = build_dressed_ladder(c.phi, ncut);
    const Matrix comm =
        mu * (ladder.lower.m * ladder.raise.m - ladder.raise.m * ladder.lower.m);

    CommutatorCheck out;
    out.hermiticity = (comm - comm.adjoint()).cwiseAbs().maxCoeff();
    // Levels 0..ncut-1 of both atomic blocks; a a^dagger is wrong at ncut by truncation.
    for (const Atom ai : {Atom::ground, Atom::excited}) {
        for (const Atom aj : {Atom::ground, Atom::excited}) {
            for (int i = 0; i < ncut; ++i) {
                for (int j = 0; j < ncut; ++j) {
                    const auto r = atom_field_index(ai, i, ncut);
                    const auto s = atom_field_index(aj, j, ncut);
                    const cplx expected =
                        (r == s) ? cplx{effective_energy(ai, i, mu, c.phi)} : cplx{};
                    out.residual = std::max(out.residual, std::abs(comm(r, s) - expected));
                }
            }
        }
    }
    return out;
}

std::vector<Vector> interaction_picture_states(const InteractionConfig& cfg,
                                               const GupCoefficients& c, int ncut,
                                               std::span<const double> times,
                                               const Vector& initial) {
    const OperatorMatrix h = build_rwa_hamiltonian(cfg, c, ncut, Frame::rotating);
    const Propagator propagator(h);
    std::vector<Vector> out;
    out.reserve(times.size());
    for (const double t : times) {
        Vector psi = propagator.apply(t, initial);
        for (Eigen::Index k = 0; k < psi.size(); ++k) {
            psi(k) *= std::polar(1.0, h.m(k, k).real() * t);
        }
        out.push_back(std::move(psi));
    }
    return out;
}

std::vector<Vector> interaction_picture_states_rk4(const InteractionConfig& cfg,
                                                   const GupCoefficients& c, int ncut,
                                                   std::span<const double> times,
                                                   const Vector& initial,
                                                   double* error_estimate) {
    InteractionPictureHamiltonian hip(2 * (ncut + 1));
    for (int n = 0; n < ncut; ++n) {
        const auto e = atom_field_index(Atom::excited, n, ncut);
        const auto g = atom_field_index(Atom::ground, n + 1, ncut);
        const double v = rwa_coupling(n, cfg.lambda, c.phi);
        const double nu = lowering_frequency(n, cfg, c);
        hip.add(e, g, v, nu);
        hip.add(g, e, v, -nu);
    }
    Trajectory traj = rk4_trajectory_verified(hip, initial, times, default_step(hip));
    if (error_estimate != nullptr) {
        *error_estimate = traj.error_estimate;
    }
    return std::move(traj.states);
}

DysonCheck dyson_consistency_check(const InteractionConfig& cfg, const GupCoefficients& c,
                                   int ncut, double t, const AtomFieldState& initial,
                                   Propagation propagation) {
    const OperatorMatrix h_eff = build_effective_hamiltonian(cfg, c, ncut);
    check_truncation_headroom(initial);
    const Vector psi0 = initial.to_vector();

    DysonCheck out;
    const LadderPair ladder = build_dressed_ladder(c.phi, ncut);
    const cplx occupation = psi0.dot(ladder.raise.m * (ladder.lower.m * psi0));
    out.dropped_term_mag =
        std::abs(cfg.lambda) * std::sqrt(std::abs(occupation)) / std::abs(cfg.detuning());

    const double times[] = {t};
    const Vector exact = propagation == Propagation::factorized
                             ? interaction_picture_states(cfg, c, ncut, times, psi0).front()
                             : interaction_picture_states_rk4(cfg, c, ncut, times, psi0,
                                                              &out.integration_error)
                                   .front();
    Vector effective = psi0;
    for (Eigen::Index k = 0; k < effective.size(); ++k) {
        effective(k) *= std::polar(1.0, -h_eff.m(k, k).real() * t);
    }
    out.fidelity = fidelity(exact, effective) / (exact.squaredNorm() * effective.squaredNorm());
    return out;
}

AtomFieldState evolve_dispersive_exact(const DispersiveConfig& d, Atom initial_atom) {
    const FockVector field = coherent_state(d.alpha, d.ncut);
    Vector amps = field.amps();
    for (int n = 0; n <= d.ncut; ++n) {
        amps(n) *= effective_phase(initial_atom, n, d.mu, d.phi, d.t);
    }
    return AtomFieldState::product(initial_atom, FockVector(std::move(amps), field.tail_weight()));
}

FockVector PhotonAddedDecomposition::assemble(int ncut) const {
    Vector amps = base_amp * coherent_state(rotated_alpha, ncut).amps();
    if (pacs1_amp != cplx{}) {
        amps += pacs1_amp * photon_added_coherent_state(rotated_alpha, 1, ncut).amps();
    }
    if (pacs2_amp != cplx{}) {
        amps += pacs2_amp * photon_added_coherent_state(rotated_alpha, 2, ncut).amps();
    }
    return FockVector(std::move(amps), coherent_tail_weight(rotated_alpha, ncut));
}

PhotonAddedDecomposition photon_added_decomposition(const DispersiveConfig& d,
                                                    Atom initial_atom) {
    if (!d.valid_linear()) {
        throw LinearityError("2 phi mu t <n^2> = " + std::to_string(d.linearity_parameter()) +
                                 " is outside the linear regime; t must stay well below " +
                                 std::to_string(d.time_bound()) + " s",
                             d.time_bound());
    }
    const double mut = d.mu * d.t;
    const double g = 2.0 * d.phi * mut;  // 2 phi mu t
    const cplx a = d.alpha;

    PhotonAddedDecomposition out;
    out.atom = initial_atom;
    out.k1 = pacs_normalizer(a, 1);
    out.k2 = pacs_normalizer(a, 2);
    if (initial_atom == Atom::ground) {
        out.rotated_alpha = a * std::polar(1.0, mut);
        out.base_amp = 1.0;
        out.pacs1_amp = -I * g * a * std::polar(1.0, mut) * out.k1;
        out.pacs2_amp = -I * g * a * a * std::polar(1.0, 2.0 * mut) * out.k2;
    } else {
        out.rotated_alpha = a * std::polar(1.0, -mut);
        out.base_amp = std::polar(1.0, -mut) * (1.0 + I * g);
        out.pacs1_amp = I * g * a * 3.0 * out.k1 * std::polar(1.0, -2.0 * mut);
        out.pacs2_amp = I * g * a * a * out.k2 * std::polar(1.0, -3.0 * mut);
    }
    out.normalization = out.assemble(d.ncut).norm();
    out.base_amp /= out.normalization;
    out.pacs1_amp /= out.normalization;
    out.pacs2_amp /= out.normalization;
    return out;
}

}  // namespace gupjc
