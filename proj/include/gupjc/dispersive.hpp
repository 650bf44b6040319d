#pragma once

// Large-detuning regime of the GUP-corrected model: the effective Hamiltonian
//   H_eff/hbar = mu ( sigma_z (N - 2 N^2 phi) + sigma_+ sigma_- (1 - 2 phi - 4 N phi) ),
// checks of its derivation, exact evolution under it, and the decomposition
// of the evolved coherent state into photon-added coherent states.

#include <span>
#include <vector>

#include "gupjc/fock.hpp"
#include "gupjc/gup.hpp"

namespace gupjc {

/// |detuning| / (lambda sqrt(ncut)) must reach this for the effective Hamiltonian.
inline constexpr double kDispersiveRatio = 10.0;

/// Upper limit on 2 phi mu t <n^2> for the first-order phase expansion.
inline constexpr double kLinearityLimit = 0.1;

struct DispersiveConfig {
    double mu = 0.0;  // lambda^2 / detuning, rad/s
    double phi = 0.0;
    cplx alpha{};
    double t = 0.0;
    int ncut = 0;

    static DispersiveConfig make(const InteractionConfig& cfg, const GupCoefficients& c,
                                 cplx alpha, double t, int ncut);

    /// <n^2> of the coherent state, |alpha|^4 + |alpha|^2.
    double n2_moment() const;
    /// 2 phi mu t <n^2>
    double linearity_parameter() const;
    bool valid_linear() const { return linearity_parameter() < kLinearityLimit; }
    /// 1/(phi mu): the expansion needs t well below this.
    double time_bound() const;
};

/// 1/(phi mu)
double dispersive_time_bound(double mu, double phi);

/// Throws DispersiveRegimeError unless |detuning| >= 10 lambda sqrt(ncut).
void check_dispersive_regime(const InteractionConfig& cfg, int ncut);

/// Eigenvalue of H_eff/hbar on |g,n> or |e,n>.
double effective_energy(Atom atom, int n, double mu, double phi);

OperatorMatrix build_effective_hamiltonian(const InteractionConfig& cfg,
                                           const GupCoefficients& c, int ncut);

/// A = sigma_+ a (1 - N phi) and A^dagger = sigma_- a^dagger (1 - (N+1) phi).
struct LadderPair {
    OperatorMatrix lower;
    OperatorMatrix raise;
};
LadderPair build_dressed_ladder(double phi, int ncut);

struct CommutatorCheck {
    /// max |(lambda^2/detuning)[A, A^dagger] - H_eff| on levels 0..ncut-1.
    double residual = 0.0;
    /// Hermiticity residual of (lambda^2/detuning)[A, A^dagger].
    double hermiticity = 0.0;
};

CommutatorCheck commutator_check(const InteractionConfig& cfg, const GupCoefficients& c,
                                 int ncut);

enum class Propagation {
    /// exp(i H0 t) exp(-i H t) through eigendecompositions.
    factorized,
    /// RK4 on the explicitly time-dependent interaction-picture Hamiltonian.
    rk4,
};

struct DysonCheck {
    double fidelity = 1.0;
    /// lambda |<A^dagger A>|^{1/2} / detuning in the initial state.
    double dropped_term_mag = 0.0;
    double integration_error = 0.0;
};

/// Compares interaction-picture evolution under the RWA Hamiltonian with
/// evolution under H_eff over [0, t].
DysonCheck dyson_consistency_check(const InteractionConfig& cfg, const GupCoefficients& c,
                                   int ncut, double t, const AtomFieldState& initial,
                                   Propagation propagation = Propagation::factorized);

/// Interaction-picture state at each time: exact factorized propagation.
std::vector<Vector> interaction_picture_states(const InteractionConfig& cfg,
                                               const GupCoefficients& c, int ncut,
                                               std::span<const double> times,
                                               const Vector& initial);

/// Same, by verified RK4 integration.
std::vector<Vector> interaction_picture_states_rk4(const InteractionConfig& cfg,
                                                   const GupCoefficients& c, int ncut,
                                                   std::span<const double> times,
                                                   const Vector& initial,
                                                   double* error_estimate = nullptr);

/// Phase-by-phase evolution of |atom>|alpha> under H_eff (no Taylor expansion).
AtomFieldState evolve_dispersive_exact(const DispersiveConfig& d, Atom initial_atom);

struct PhotonAddedDecomposition {
    Atom atom = Atom::ground;
    /// Amplitude of the rotated coherent state alpha e^{+-i mu t}.
    cplx rotated_alpha{};
    cplx base_amp{};
    cplx pacs1_amp{};
    cplx pacs2_amp{};
    double normalization = 1.0;
    double k1 = 1.0;
    double k2 = 1.0;

    /// base |beta> + pacs1 |beta,1> + pacs2 |beta,2>, the field part of the state.
    FockVector assemble(int ncut) const;
};

/// First-order decomposition; LinearityError when 2 phi mu t <n^2> >= 0.1.
PhotonAddedDecomposition photon_added_decomposition(const DispersiveConfig& d,
                                                    Atom initial_atom);

}  // namespace gupjc
