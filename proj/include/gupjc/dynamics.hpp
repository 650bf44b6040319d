#pragma once

// Resonant GUP-corrected Jaynes-Cummings dynamics starting from |e, n>.
//
// Two frequencies are in play and are kept apart by name:
//   half frequency      lambda sqrt(n+1) (1 - (n+1) phi), the argument of the
//                       cos/sin amplitudes;
//   inversion frequency 2 lambda sqrt(n+1) (1 - (n+1) phi), the frequency of
//                       W(t) = cos(inversion frequency * t).

#include <span>
#include <vector>

#include "gupjc/gup.hpp"

namespace gupjc {

/// lambda sqrt(n+1) (1 - (n+1) phi)
double half_rabi_frequency(int n, double lambda, double phi);

/// 4 sqrt(n+1) chi omega / lambda, the correction in the printed C_e prefactor.
double chi_expansion_parameter(int n, const InteractionConfig& cfg, const GupCoefficients& c);

struct AnalyticAmplitudes {
    cplx excited;  // C_{e,n}
    cplx ground;   // C_{g,n+1}
    /// The chi prefactor exceeds 0.1 and the first-order expansion is unreliable.
    bool outside_validity = false;
};

/// First-order amplitudes, exactly as printed (not renormalized).
AnalyticAmplitudes analytic_amplitudes(int n, const InteractionConfig& cfg,
                                       const GupCoefficients& c, double t);

struct Inversion {
    double first_order;      // cos(2 * half frequency * t)
    double from_amplitudes;  // |C_e|^2 - |C_g|^2 of the printed amplitudes
};

Inversion atomic_inversion(int n, const InteractionConfig& cfg, const GupCoefficients& c,
                           double t);

struct RabiSolution {
    int n = 0;
    double omega_qg = 0.0;     // inversion frequency with the GUP correction
    double omega_std = 0.0;    // 2 lambda sqrt(n+1)
    double delta_omega = 0.0;  // omega_std - omega_qg
    double omega_qg_half = 0.0;
};

RabiSolution rabi_shift(int n, const InteractionConfig& cfg, const GupCoefficients& c);

/// Largest |detuning| / lambda accepted as resonant by the numeric validation.
inline constexpr double kResonanceTolerance = 1e-3;

struct NumericValidation {
    double max_amp_err = 0.0;
    double max_inv_err = 0.0;
    std::vector<cplx> numeric_excited;
    std::vector<cplx> numeric_ground;
    std::vector<double> numeric_inversion;
};

/// Evolves |e,n> exactly under the RWA Hamiltonian and compares with the
/// printed amplitudes over t_grid. The numeric amplitudes are taken relative
/// to the mean energy of the {|e,n>, |g,n+1>} block, which removes the global
/// phase the first-order solution does not carry.
NumericValidation validate_against_numeric(int n, const InteractionConfig& cfg,
                                           const GupCoefficients& c,
                                           std::span<const double> t_grid, int ncut);

/// Least-squares fit of cos(w t) to an inversion series, searched within half
/// a cycle (over the series duration) of the guess.
double fit_inversion_frequency(std::span<const double> t, std::span<const double> w,
                               double guess);

}  // namespace gupjc
