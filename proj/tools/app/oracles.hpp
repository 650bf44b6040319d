#pragma once

// Closed-form reference values, written independently of the library's
// algorithms (direct sums, textbook formulas).

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline double factorial(int n) { return std::tgamma(n + 1.0); }

inline double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

/// L_m(x) = sum_k C(m, k) (-x)^k / k!, accumulated in extended precision.
inline double laguerre_sum(int m, double x) {
    long double s = 0.0L;
    long double term = 1.0L;  // C(m, k) (-x)^k / k!
    for (int k = 0; k <= m; ++k) {
        s += term;
        term *= -static_cast<long double>(x) * (m - k) / ((k + 1.0L) * (k + 1.0L));
    }
    return static_cast<double>(s);
}

/// e^{-|a|^2/2} a^n / sqrt(n!)
inline cplx coherent_amp(cplx alpha, int n) {
    const double mag = std::exp(-0.5 * std::norm(alpha)) / std::sqrt(factorial(n));
    return mag * std::pow(alpha, n);
}

/// Standard resonant JCM from |e,n>: (C_e, C_g).
inline std::pair<cplx, cplx> jcm_amplitudes(int n, double lambda, double t) {
    const double w = lambda * std::sqrt(n + 1.0);
    return {std::cos(w * t), cplx{0.0, -std::sin(w * t)}};
}

inline double wigner_coherent(cplx z, cplx alpha) {
    return 2.0 / std::numbers::pi * std::exp(-2.0 * std::norm(z - alpha));
}

inline double wigner_fock(int n, cplx z) {
    const double r2 = std::norm(z);
    return 2.0 / std::numbers::pi * (n % 2 == 0 ? 1.0 : -1.0) * laguerre_sum(n, 4.0 * r2) *
           std::exp(-2.0 * r2);
}

/// Squared norm of a^dagger^m |alpha> by explicit summation of its amplitudes.
inline double photon_added_norm2(cplx alpha, int m, int nmax) {
    double s = 0.0;
    for (int k = m; k <= nmax; ++k) {
        s += std::norm(coherent_amp(alpha, k - m)) * factorial(k) / factorial(k - m);
    }
    return s;
}

/// log2(a / b), the slope of a quantity that drops from a to b under halving.
inline double halving_slope(double a, double b) { return std::log2(a / b); }

/// Mean pairwise slope over a halving sequence.
inline double mean_halving_slope(const std::vector<double>& values) {
    double s = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        s += halving_slope(values[i - 1], values[i]);
    }
    return s / static_cast<double>(values.size() - 1);
}

}  // namespace oracle
