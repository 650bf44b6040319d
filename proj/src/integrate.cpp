#include "gupjc/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gupjc/errors.hpp"

namespace gupjc {

void InteractionPictureHamiltonian::add(Eigen::Index row, Eigen::Index col, cplx value,
                                        double frequency) {
    if (row < 0 || col < 0 || row >= dim_ || col >= dim_) {
        throw std::out_of_range("InteractionPictureHamiltonian::add: index out of range");
    }
    entries_.push_back({row, col, value, frequency});
}

double InteractionPictureHamiltonian::max_frequency() const {
    double out = 0.0;
    for (const auto& e : entries_) {
        out = std::max(out, std::abs(e.frequency));
    }
    return out;
}

double InteractionPictureHamiltonian::max_coupling() const {
    double out = 0.0;
    for (const auto& e : entries_) {
        out = std::max(out, std::abs(e.value));
    }
    return out;
}

void InteractionPictureHamiltonian::derivative(double t, const Vector& y, Vector& dy) const {
    dy.setZero(dim_);
    for (const auto& e : entries_) {
        dy(e.row) += e.value * std::polar(1.0, e.frequency * t) * y(e.col);
    }
    dy *= -I;
}

double default_step(const InteractionPictureHamiltonian& h) {
    const double scale = std::max(h.max_frequency(), h.max_coupling());
    if (scale == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 0.01 / scale;
}

Trajectory rk4_trajectory(const InteractionPictureHamiltonian& h, const Vector& y0,
                          std::span<const double> times, double max_step) {
    if (!(max_step > 0.0)) {
        throw std::invalid_argument("rk4_trajectory: step must be positive");
    }
    if (y0.size() != h.dim()) {
        throw std::invalid_argument("rk4_trajectory: dimension mismatch");
    }
    Trajectory out;
    out.states.reserve(times.size());
    Vector y = y0;
    Vector k1, k2, k3, k4;
    double t = 0.0;
    for (const double target : times) {
        if (target < t) {
            throw std::invalid_argument("rk4_trajectory: times must be non-decreasing from 0");
        }
        const double span = target - t;
        const long steps = std::isfinite(max_step)
                               ? std::max(1L, static_cast<long>(std::ceil(span / max_step)))
                               : 1L;
        const double dt = span / static_cast<double>(steps);
        for (long s = 0; s < steps && dt > 0.0; ++s) {
            h.derivative(t, y, k1);
            h.derivative(t + 0.5 * dt, y + 0.5 * dt * k1, k2);
            h.derivative(t + 0.5 * dt, y + 0.5 * dt * k2, k3);
            h.derivative(t + dt, y + dt * k3, k4);
            y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += dt;
        }
        t = target;
        out.steps += steps;
        out.states.push_back(y);
    }
    return out;
}

Trajectory rk4_trajectory_verified(const InteractionPictureHamiltonian& h, const Vector& y0,
                                   std::span<const double> times, double max_step, double tol) {
    const Trajectory coarse = rk4_trajectory(h, y0, times, max_step);
    Trajectory fine = rk4_trajectory(h, y0, times, 0.5 * max_step);
    double err = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        err = std::max(err, (fine.states[i] - coarse.states[i]).cwiseAbs().maxCoeff() / 15.0);
    }
    fine.error_estimate = err;
    if (err > tol) {
        throw IntegrationError("RK4 error estimate " + std::to_string(err) +
                               " exceeds tolerance " + std::to_string(tol));
    }
    return fine;
}

}  // namespace gupjc
