#pragma once

// Validity of the rotating-wave approximation for the GUP-corrected model.
//
// Starting from |e,n> under the full interaction (counter-rotating and
// linear-GUP terms kept), first-order perturbation theory populates
// |g,n-1>, |g,n+1> and |g,n+2>. The ratios
//   zeta_LQ = |avg C_{g,n+2}| / T2(C_{g,n+1})   (linear vs quadratic GUP)
//   zeta_RQ = |avg C_{g,n-1}| / T2(C_{g,n+1})   (counter-rotating vs quadratic GUP)
// measure whether the dropped terms are negligible.

#include <array>
#include <span>
#include <vector>

#include "gupjc/gup.hpp"

namespace gupjc {

struct PerturbationAmplitudes {
    cplx c_gn_minus1{};
    cplx c_gn_plus1{};
    cplx c_gn_plus2{};
    double t = 0.0;
    int n = 0;
};

PerturbationAmplitudes first_order_amplitudes(int n, const InteractionConfig& cfg,
                                              const GupCoefficients& c, double t);

struct TimeAveragedMagnitudes {
    double m_minus1 = 0.0;
    /// GUP part of the |g,n+1> magnitude only.
    double m_plus1_t2 = 0.0;
    double m_plus2 = 0.0;
};

TimeAveragedMagnitudes time_averaged_magnitudes(int n, const InteractionConfig& cfg,
                                                const GupCoefficients& c);

/// Detuning-ratio factor taken in absolute value.
double zeta_lq(int n, const InteractionConfig& cfg, const GupParams& p);
double zeta_rq(int n, const InteractionConfig& cfg, const GupParams& p);

/// Same expressions with the signed detuning-ratio factor.
double zeta_lq_signed(int n, const InteractionConfig& cfg, const GupParams& p);
double zeta_rq_signed(int n, const InteractionConfig& cfg, const GupParams& p);

/// gamma at which zeta_LQ reaches one (zeta_LQ is proportional to 1/gamma).
double zeta_lq_unit_gamma(int n, const InteractionConfig& cfg, const GupParams& p);

struct ZetaMapSpec {
    int n = 50;
    GupParams params;
    double omega_min = 1e9;
    double omega_max = 1e17;
    int omega_points = 81;
    double delta_min = 1e3;
    double delta_max = 1e5;
    int delta_points = 41;
    double lambda = 1.0;
    int threads = 0;

    /// n = 50, gamma = 0.5, delta = epsilon = 1.
    static ZetaMapSpec fig2();
    /// n = 50, gamma = 5e3, delta = epsilon = 1.
    static ZetaMapSpec fig3();
};

struct ZetaMap {
    std::vector<double> omega_axis;
    std::vector<double> delta_axis;
    /// (i_delta, i_omega)
    Eigen::MatrixXd zeta_lq;
    Eigen::MatrixXd zeta_rq;
    int n = 0;
    GupParams params;
};

/// Log-uniform axes (endpoints inclusive).
std::vector<double> log_axis(double lo, double hi, int points);

ZetaMap zeta_map(const ZetaMapSpec& spec);

struct PerturbationCrossCheck {
    /// Max over channels of max_t |numeric - first order| / max_t |first order|.
    double max_rel_err = 0.0;
    /// Channels n-1, n+1, n+2; zero where the first-order amplitude vanishes.
    std::array<double, 3> channel_rel_err{};
    double integration_error = 0.0;
    std::vector<PerturbationAmplitudes> numeric;
};

/// Integrates |e,n> in the interaction picture of the full Hamiltonian and
/// compares with first_order_amplitudes on t_grid. max_step <= 0 selects
/// the default step.
PerturbationCrossCheck perturbation_cross_check(int n, const InteractionConfig& cfg,
                                                const GupCoefficients& c,
                                                std::span<const double> t_grid, int ncut,
                                                double max_step = 0.0);

}  // namespace gupjc
