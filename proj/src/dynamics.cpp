#include "gupjc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gupjc {

double half_rabi_frequency(int n, double lambda, double phi) {
    const double m = n + 1.0;
    return lambda * std::sqrt(m) * (1.0 - m * phi);
}

double chi_expansion_parameter(int n, const InteractionConfig& cfg, const GupCoefficients& c) {
    return 4.0 * std::sqrt(n + 1.0) * c.chi * cfg.omega / cfg.lambda;
}

AnalyticAmplitudes analytic_amplitudes(int n, const InteractionConfig& cfg,
                                       const GupCoefficients& c, double t) {
    if (n < 0) {
        throw std::invalid_argument("analytic_amplitudes: n must be >= 0");
    }
    const double m = n + 1.0;
    const double chi_term = chi_expansion_parameter(n, cfg, c);
    const double rate = half_rabi_frequency(n, cfg.lambda, c.phi);
    AnalyticAmplitudes out;
    out.excited = std::cos(rate * t) * (1.0 - 2.0 * m * c.phi - chi_term);
    out.ground = -I * std::sin(rate * t) * (1.0 - 2.0 * m * c.phi);
    out.outside_validity = std::abs(chi_term) > 0.1;
    return out;
}

Inversion atomic_inversion(int n, const InteractionConfig& cfg, const GupCoefficients& c,
                           double t) {
    const auto amps = analytic_amplitudes(n, cfg, c, t);
    return {std::cos(2.0 * half_rabi_frequency(n, cfg.lambda, c.phi) * t),
            std::norm(amps.excited) - std::norm(amps.ground)};
}

RabiSolution rabi_shift(int n, const InteractionConfig& cfg, const GupCoefficients& c) {
    if (n < 0) {
        throw std::invalid_argument("rabi_shift: n must be >= 0");
    }
    const double m = n + 1.0;
    RabiSolution s;
    s.n = n;
    s.omega_std = 2.0 * cfg.lambda * std::sqrt(m);
    s.omega_qg = s.omega_std * (1.0 - m * c.phi);
    s.delta_omega = s.omega_std * m * c.phi;
    s.omega_qg_half = half_rabi_frequency(n, cfg.lambda, c.phi);
    return s;
}

NumericValidation validate_against_numeric(int n, const InteractionConfig& cfg,
                                           const GupCoefficients& c,
                                           std::span<const double> t_grid, int ncut) {
    if (ncut < n + 2) {
        throw std::invalid_argument("validate_against_numeric: ncut must be >= n + 2");
    }
    if (std::abs(cfg.detuning()) > kResonanceTolerance * std::abs(cfg.lambda)) {
        throw std::invalid_argument("validate_against_numeric: detuning is not resonant");
    }
    const OperatorMatrix h = build_rwa_hamiltonian(cfg, c, ncut, Frame::rotating);
    const Propagator propagator(h);

    const auto e = atom_field_index(Atom::excited, n, ncut);
    const auto g = atom_field_index(Atom::ground, n + 1, ncut);
    const double block_center = 0.5 * (h.m(e, e).real() + h.m(g, g).real());

    AtomFieldState initial = AtomFieldState::product(Atom::excited, FockVector::basis(n, ncut));
    check_truncation_headroom(initial);
    const Vector psi0 = initial.to_vector();

    NumericValidation out;
    out.numeric_excited.reserve(t_grid.size());
    out.numeric_ground.reserve(t_grid.size());
    out.numeric_inversion.reserve(t_grid.size());
    for (const double t : t_grid) {
        const Vector psi = propagator.apply(t, psi0);
        const cplx phase = std::polar(1.0, block_center * t);
        const cplx ce = psi(e) * phase;
        const cplx cg = psi(g) * phase;
        const auto analytic = analytic_amplitudes(n, cfg, c, t);
        const double inversion = std::norm(ce) - std::norm(cg);

        out.max_amp_err = std::max({out.max_amp_err, std::abs(ce - analytic.excited),
                                    std::abs(cg - analytic.ground)});
        out.max_inv_err =
            std::max(out.max_inv_err, std::abs(inversion - atomic_inversion(n, cfg, c, t).first_order));
        out.numeric_excited.push_back(ce);
        out.numeric_ground.push_back(cg);
        out.numeric_inversion.push_back(inversion);
    }
    return out;
}

double fit_inversion_frequency(std::span<const double> t, std::span<const double> w,
                               double guess) {
    if (t.size() != w.size() || t.empty()) {
        throw std::invalid_argument("fit_inversion_frequency: series size mismatch");
    }
    const double t_max = *std::max_element(t.begin(), t.end());
    if (!(t_max > 0.0) || !(guess > 0.0)) {
        throw std::invalid_argument("fit_inversion_frequency: need positive times and guess");
    }
    auto residual = [&](double freq) {
        double sum = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double d = w[i] - std::cos(freq * t[i]);
            sum += d * d;
        }
        return sum;
    };
    const double half_cycle = 0.5 * std::numbers::pi / t_max;
    double lo = std::max(0.0, guess - half_cycle);
    double hi = guess + half_cycle;
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = residual(x1);
    double f2 = residual(x2);
    for (int iter = 0; iter < 200 && hi - lo > 1e-16 * hi; ++iter) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = residual(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = residual(x2);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace gupjc
