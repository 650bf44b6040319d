#include "gupjc/rwa_validity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gupjc/errors.hpp"
#include "gupjc/integrate.hpp"
#include "gupjc/parallel.hpp"

namespace gupjc {

namespace {

struct Denominators {
    double sum;         // omega + omega0
    double difference;  // omega - omega0
    double two_photon;  // 2 omega - omega0
};

Denominators denominators(const InteractionConfig& cfg) {
    const Denominators d{cfg.omega + cfg.omega0, -cfg.detuning(), cfg.omega - cfg.detuning()};
    const double scale = 1e-15 * d.sum;
    if (std::abs(d.difference) <= scale) {
        throw SingularDenominatorError("resonance: omega == omega0");
    }
    if (std::abs(d.two_photon) <= scale) {
        throw SingularDenominatorError("two-photon resonance: omega0 == 2 omega");
    }
    return d;
}

double quadratic_weight(const GupParams& p) {
    const double w = 3.0 * p.delta * p.delta - 2.0 * p.epsilon;
    if (w == 0.0) {
        throw DegenerateModelError("3 delta^2 == 2 epsilon: the quadratic GUP channel vanishes");
    }
    return w;
}

// (e^{i x t} - 1) / x
cplx phase_integral(double x, double t) { return (std::polar(1.0, x * t) - 1.0) / x; }

}  // namespace

PerturbationAmplitudes first_order_amplitudes(int n, const InteractionConfig& cfg,
                                              const GupCoefficients& c, double t) {
    if (n < 0) {
        throw std::invalid_argument("first_order_amplitudes: n must be >= 0");
    }
    const Denominators d = denominators(cfg);
    const double lambda = cfg.lambda;
    const double m = n + 1.0;
    PerturbationAmplitudes out;
    out.t = t;
    out.n = n;
    out.c_gn_minus1 = -lambda * std::sqrt(static_cast<double>(n)) * phase_integral(-d.sum, t);
    out.c_gn_plus1 = -lambda * std::sqrt(m) * (1.0 - m * c.phi) * phase_integral(d.difference, t);
    out.c_gn_plus2 = lambda * c.xi() * std::sqrt(m * (m + 1.0)) * phase_integral(d.two_photon, t);
    return out;
}

TimeAveragedMagnitudes time_averaged_magnitudes(int n, const InteractionConfig& cfg,
                                                const GupCoefficients& c) {
    const Denominators d = denominators(cfg);
    const double lambda = cfg.lambda;
    const double m = n + 1.0;
    return {lambda * std::sqrt(static_cast<double>(n)) / d.sum,
            lambda * m * std::sqrt(m) * c.phi / std::abs(d.difference),
            lambda * c.xi_mag * std::sqrt(m * (m + 1.0)) / std::abs(d.two_photon)};
}

namespace {

double lq(int n, const InteractionConfig& cfg, const GupParams& p, bool absolute) {
    const Denominators d = denominators(cfg);
    const double m = n + 1.0;
    const double ratio = d.difference / d.two_photon;
    return std::sqrt(2.0 * (n + 2.0)) / m * (p.delta / quadratic_weight(p)) /
           (p.gamma * std::sqrt(constants::hbar * cfg.omega)) * (absolute ? std::abs(ratio) : ratio);
}

double rq(int n, const InteractionConfig& cfg, const GupParams& p, bool absolute) {
    const Denominators d = denominators(cfg);
    const double m = n + 1.0;
    const double ratio = d.difference / d.sum;
    return std::sqrt(static_cast<double>(n)) / (m * std::sqrt(m)) * (absolute ? std::abs(ratio) : ratio) /
           quadratic_weight(p) / (p.gamma * p.gamma) / (constants::hbar * cfg.omega);
}

}  // namespace

double zeta_lq(int n, const InteractionConfig& cfg, const GupParams& p) { return lq(n, cfg, p, true); }
double zeta_rq(int n, const InteractionConfig& cfg, const GupParams& p) { return rq(n, cfg, p, true); }
double zeta_lq_signed(int n, const InteractionConfig& cfg, const GupParams& p) { return lq(n, cfg, p, false); }
double zeta_rq_signed(int n, const InteractionConfig& cfg, const GupParams& p) { return rq(n, cfg, p, false); }

double zeta_lq_unit_gamma(int n, const InteractionConfig& cfg, const GupParams& p) {
    return p.gamma * zeta_lq(n, cfg, p);
}

ZetaMapSpec ZetaMapSpec::fig2() {
    ZetaMapSpec s;
    s.params = GupParams::from_gamma(0.5, 1.0, 1.0);
    return s;
}

ZetaMapSpec ZetaMapSpec::fig3() {
    ZetaMapSpec s;
    s.params = GupParams::from_gamma(5e3, 1.0, 1.0);
    return s;
}

std::vector<double> log_axis(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) {
        throw std::invalid_argument("log_axis: need 0 < lo < hi and at least two points");
    }
    std::vector<double> axis(points);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (int i = 0; i < points; ++i) {
        axis[i] = std::pow(10.0, a + (b - a) * i / (points - 1));
    }
    axis.front() = lo;
    axis.back() = hi;
    return axis;
}

ZetaMap zeta_map(const ZetaMapSpec& spec) {
    ZetaMap out;
    out.n = spec.n;
    out.params = spec.params;
    out.omega_axis = log_axis(spec.omega_min, spec.omega_max, spec.omega_points);
    out.delta_axis = log_axis(spec.delta_min, spec.delta_max, spec.delta_points);
    const auto rows = static_cast<Eigen::Index>(out.delta_axis.size());
    const auto cols = static_cast<Eigen::Index>(out.omega_axis.size());
    out.zeta_lq.resize(rows, cols);
    out.zeta_rq.resize(rows, cols);
    quadratic_weight(spec.params);
    parallel_for(out.delta_axis.size(), spec.threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < out.omega_axis.size(); ++j) {
            const double omega = out.omega_axis[j];
            const InteractionConfig cfg(omega, omega + out.delta_axis[i], spec.lambda);
            const auto r = static_cast<Eigen::Index>(i);
            const auto c = static_cast<Eigen::Index>(j);
            out.zeta_lq(r, c) = zeta_lq(spec.n, cfg, spec.params);
            out.zeta_rq(r, c) = zeta_rq(spec.n, cfg, spec.params);
        }
    });
    return out;
}

PerturbationCrossCheck perturbation_cross_check(int n, const InteractionConfig& cfg,
                                                const GupCoefficients& c,
                                                std::span<const double> t_grid, int ncut,
                                                double max_step) {
    if (n < 1) {
        throw std::invalid_argument("perturbation_cross_check: n must be >= 1");
    }
    if (ncut < n + 3) {
        throw std::invalid_argument("perturbation_cross_check: ncut must be >= n + 3");
    }
    const Denominators d = denominators(cfg);
    const double smallest =
        std::min({std::abs(d.difference), std::abs(d.two_photon), std::abs(d.sum)});
    const double smallness = std::abs(cfg.lambda) * std::max(std::sqrt(double(n)), 1.0) / smallest;
    if (smallness > 1e-3) {
        throw std::invalid_argument("perturbation_cross_check: lambda is not perturbative (" +
                                    std::to_string(smallness) + " > 1e-3)");
    }

    // E_i - E_j for the free terms, written through the detuning so that
    // near-resonant differences carry no cancellation.
    const auto level = [ncut](Eigen::Index idx) {
        const int atom_sign = idx > ncut ? 1 : -1;
        const int photons = static_cast<int>(idx > ncut ? idx - (ncut + 1) : idx);
        return std::pair{atom_sign, photons};
    };
    const auto bohr = [&](Eigen::Index i, Eigen::Index j) {
        const auto [si, ki] = level(i);
        const auto [sj, kj] = level(j);
        const double half_atom = 0.5 * (si - sj);
        const double quad = double(ki) * ki + ki - (double(kj) * kj + kj);
        return cfg.omega * (half_atom + (ki - kj)) + half_atom * cfg.detuning() -
               4.0 * cfg.omega * c.chi * quad;
    };
    const OperatorMatrix v = build_full_interaction_hamiltonian(cfg, c, ncut);
    const auto hip = InteractionPictureHamiltonian::from_matrix(v.m, bohr);

    const Vector psi0 = AtomFieldState::product(Atom::excited, FockVector::basis(n, ncut)).to_vector();
    const double step = max_step > 0.0 ? max_step : default_step(hip);
    const Trajectory traj = rk4_trajectory_verified(hip, psi0, t_grid, step);

    PerturbationCrossCheck out;
    out.integration_error = traj.error_estimate;
    std::array<double, 3> max_diff{};
    std::array<double, 3> max_ref{};
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const Vector& y = traj.states[k];
        PerturbationAmplitudes num;
        num.t = t_grid[k];
        num.n = n;
        num.c_gn_minus1 = y(atom_field_index(Atom::ground, n - 1, ncut));
        num.c_gn_plus1 = y(atom_field_index(Atom::ground, n + 1, ncut));
        num.c_gn_plus2 = y(atom_field_index(Atom::ground, n + 2, ncut));
        const auto ref = first_order_amplitudes(n, cfg, c, t_grid[k]);
        const std::array<cplx, 3> nv{num.c_gn_minus1, num.c_gn_plus1, num.c_gn_plus2};
        const std::array<cplx, 3> rv{ref.c_gn_minus1, ref.c_gn_plus1, ref.c_gn_plus2};
        for (int ch = 0; ch < 3; ++ch) {
            max_diff[ch] = std::max(max_diff[ch], std::abs(nv[ch] - rv[ch]));
            max_ref[ch] = std::max(max_ref[ch], std::abs(rv[ch]));
        }
        out.numeric.push_back(num);
    }
    for (int ch = 0; ch < 3; ++ch) {
        out.channel_rel_err[ch] = max_ref[ch] > 0.0 ? max_diff[ch] / max_ref[ch] : 0.0;
        out.max_rel_err = std::max(out.max_rel_err, out.channel_rel_err[ch]);
    }
    return out;
}

}  // namespace gupjc
