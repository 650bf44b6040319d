#pragma once

// GUP parameterization and the GUP-modified Jaynes-Cummings Hamiltonians.
//
// All Hamiltonians are returned as H/hbar in rad/s on the atom-field space
// (or the field space for the free-field term). Cubic a^3 / a^dagger^3
// contributions are not modeled.

#include "gupjc/fock.hpp"

namespace gupjc {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double c = 2.99792458e8;              // m/s
inline constexpr double planck_mass = 2.176434e-8;     // kg
inline constexpr double planck_length = 1.616255e-35;  // m
/// gamma0 above this violates the electroweak length-scale bound.
inline constexpr double gamma0_electroweak_bound = 1e8;
}  // namespace constants

/// gamma0 / gamma in SI units, sqrt(M_Pl) * c (about 4.4e4).
double gamma_conversion_factor();

/// Physical GUP inputs. gamma is in J^{-1/2}.
struct GupParams {
    double gamma0 = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
    double gamma = 0.0;

    static GupParams from_gamma0(double gamma0, double delta, double epsilon);
    static GupParams from_gamma(double gamma, double delta, double epsilon);
};

/// Dimensionless coefficients phi, chi, beta and |xi| at a field frequency.
struct GupCoefficients {
    double phi = 0.0;
    double chi = 0.0;
    double beta = 0.0;
    double xi_mag = 0.0;
    double omega = 0.0;

    /// xi = i * xi_mag.
    cplx xi() const { return I * xi_mag; }

    /// Coefficients chosen directly; beta is fixed by 8 chi = phi + 2 beta.
    static GupCoefficients synthetic(double phi, double chi, double xi_mag, double omega);
};

/// Field frequency, atomic frequency and coupling, all in rad/s.
struct InteractionConfig {
    double omega = 0.0;
    double omega0 = 0.0;
    double lambda = 0.0;

    InteractionConfig() = default;
    InteractionConfig(double omega, double omega0, double lambda);

    double detuning() const noexcept { return omega0 - omega; }
    /// mu = lambda^2 / detuning
    double mu() const;
};

GupCoefficients derive_coefficients(const GupParams& p, double omega);

struct LengthScaleBounds {
    double length_scale = 0.0;  // m
    bool gamma_upper_ok = false;
};

/// L = gamma0^2 l_Pl and whether gamma0 respects the electroweak bound.
LengthScaleBounds length_scale_bounds(const GupParams& p);

/// Interaction term with the counter-rotating and linear-GUP (xi) pieces.
OperatorMatrix build_full_interaction_hamiltonian(const InteractionConfig& cfg,
                                                  const GupCoefficients& c, int ncut);

/// Atomic term, modified free field (without the 1/2 offset) and the full interaction.
OperatorMatrix build_full_hamiltonian(const InteractionConfig& cfg, const GupCoefficients& c,
                                      int ncut);

enum class Frame {
    lab,
    /// Rotating at omega (N + sigma_z / 2), constant -omega*beta removed.
    /// Exact for the RWA Hamiltonian, which commutes with the generator.
    rotating,
};

OperatorMatrix build_rwa_hamiltonian(const InteractionConfig& cfg, const GupCoefficients& c,
                                     int ncut, Frame frame = Frame::lab);

/// Diagonal omega [(N + 1/2) - 4 (N^2 + N) chi - beta] on the field space.
OperatorMatrix build_modified_free_field(const GupCoefficients& c, double omega, int ncut);

/// Matrix element <g, n+1| H_rwa/hbar |e, n> = lambda sqrt(n+1) (1 - (n+1) phi).
double rwa_coupling(int n, double lambda, double phi);

}  // namespace gupjc
