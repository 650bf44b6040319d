#pragma once

// Fixed-step RK4 for the interaction-picture Schroedinger equation
//   d/dt y = -i H_IP(t) y,   H_IP(t)_{ij} = V_{ij} exp(i nu_{ij} t).

#include <span>
#include <vector>

#include "gupjc/fock.hpp"

namespace gupjc {

/// Non-zero entries of an interaction Hamiltonian (rad/s) with the Bohr
/// frequency nu_ij = E_i - E_j of each transition.
class InteractionPictureHamiltonian {
public:
    struct Entry {
        Eigen::Index row;
        Eigen::Index col;
        cplx value;
        double frequency;
    };

    explicit InteractionPictureHamiltonian(Eigen::Index dim) : dim_(dim) {}

    /// Adds V_ij (and nothing for the transpose; callers add both halves).
    void add(Eigen::Index row, Eigen::Index col, cplx value, double frequency);

    /// Builds the entry list from a Schroedinger-picture interaction matrix and
    /// a callback returning E_i - E_j for each non-zero entry.
    template <typename FrequencyFn>
    static InteractionPictureHamiltonian from_matrix(const Matrix& v, FrequencyFn&& frequency) {
        InteractionPictureHamiltonian h(v.rows());
        for (Eigen::Index j = 0; j < v.cols(); ++j) {
            for (Eigen::Index i = 0; i < v.rows(); ++i) {
                if (v(i, j) != cplx{}) {
                    h.add(i, j, v(i, j), frequency(i, j));
                }
            }
        }
        return h;
    }

    Eigen::Index dim() const noexcept { return dim_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }

    /// Largest |nu_ij| and largest |V_ij|, used for step-size selection.
    double max_frequency() const;
    double max_coupling() const;

    /// dy = -i H_IP(t) y
    void derivative(double t, const Vector& y, Vector& dy) const;

private:
    Eigen::Index dim_;
    std::vector<Entry> entries_;
};

struct Trajectory {
    std::vector<Vector> states;  // one per requested time
    double error_estimate = 0.0;
    long steps = 0;
};

/// Integrates from t = 0 through every time in `times` (non-decreasing),
/// with steps no longer than max_step.
Trajectory rk4_trajectory(const InteractionPictureHamiltonian& h, const Vector& y0,
                          std::span<const double> times, double max_step);

/// As rk4_trajectory, repeated at half the step. The difference of the two
/// runs divided by 15 estimates the error of the finer one; IntegrationError
/// is thrown when it exceeds tol.
Trajectory rk4_trajectory_verified(const InteractionPictureHamiltonian& h, const Vector& y0,
                                   std::span<const double> times, double max_step,
                                   double tol = 1e-10);

/// Step bound 0.01 * min(1 / max frequency, 1 / max coupling).
double default_step(const InteractionPictureHamiltonian& h);

}  // namespace gupjc
