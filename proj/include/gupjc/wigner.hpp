#pragma once

// Wigner function of pure field states by displaced parity,
//   W(z) = (2/pi) sum_k (-1)^k |<k| D(-z) |psi>|^2,
// normalized so that the integral over dx dy (z = x + i y) is one.

#include <vector>

#include "gupjc/fock.hpp"

namespace gupjc {

struct GridSpec {
    double re_min = -4.0;
    double re_max = 4.0;
    int re_points = 201;
    double im_min = -4.0;
    double im_max = 4.0;
    int im_points = 201;

    static GridSpec square(double half_width, int points);

    std::vector<double> re_axis() const;
    std::vector<double> im_axis() const;
    /// Largest |z| on the grid.
    double max_abs() const;
};

struct WignerGrid {
    std::vector<double> re_axis;
    std::vector<double> im_axis;
    /// values(i_im, i_re)
    Eigen::MatrixXd values;

    /// Trapezoidal integral over the grid.
    double integral() const;
};

struct WignerOptions {
    int threads = 0;
    /// Padding levels above the state's cutoff; negative selects the default policy.
    int extra_levels = -1;
};

/// Displaced-parity evaluator for states up to a given cutoff and |z| up to max_abs_z.
class WignerEvaluator {
public:
    WignerEvaluator(int state_ncut, double max_abs_z, int extra_levels = -1);

    /// Padding used by the default policy: 2|z|^2 + 10 plus a margin for the
    /// spread of the displaced state.
    static int default_extra_levels(int state_ncut, double max_abs_z);

    int padded_ncut() const noexcept { return padded_ncut_; }

    /// Throws TruncationError when the displaced state leaks more than 1e-8
    /// probability into the two highest padded levels.
    double operator()(const FockVector& psi, cplx z) const;

private:
    int state_ncut_;
    int padded_ncut_;
    double max_abs_z_;
    Eigen::VectorXd evals_;
    Matrix evecs_;
    Vector parity_phase_;
};

double wigner_at(const FockVector& psi, cplx z);

WignerGrid wigner_of_state(const FockVector& psi, const GridSpec& grid,
                           const WignerOptions& options = {});

struct WignerDifference {
    WignerGrid delta;
    double max_abs = 0.0;
    double max_re = 0.0;
    double max_im = 0.0;
    double delta_at_max = 0.0;
    /// Reference coherent-state Wigner value at the location of max |delta|.
    double reference_at_max = 0.0;
    double reference_peak = 0.0;
};

/// W_psi - W_coherent(reference_alpha) on the grid, with the reference built
/// on psi's cutoff.
WignerDifference wigner_difference(const FockVector& psi, cplx reference_alpha,
                                   const GridSpec& grid, const WignerOptions& options = {});

/// delta_w / w_ref, the relative precision a measurement of delta_w needs.
double wigner_precision_ratio(double delta_w_max, double w_ref);

}  // namespace gupjc
