#pragma once

#include <stdexcept>
#include <string>

namespace gupjc {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The Fock cutoff is too small for the requested state or operation.
class TruncationError : public Error {
public:
    using Error::Error;
};

class NonHermitianError : public Error {
public:
    using Error::Error;
};

/// Detuning is not large enough relative to the coupling for the effective Hamiltonian.
class DispersiveRegimeError : public Error {
public:
    using Error::Error;
};

/// The first-order Taylor expansion of the dispersive phase is outside its validity range.
class LinearityError : public Error {
public:
    LinearityError(const std::string& what, double time_bound)
        : Error(what), time_bound_(time_bound) {}

    /// 1/(phi*mu), the time scale the expansion must stay well below.
    double time_bound() const noexcept { return time_bound_; }

private:
    double time_bound_;
};

class SingularDenominatorError : public Error {
public:
    using Error::Error;
};

/// 3*delta^2 == 2*epsilon: the quadratic correction channel vanishes.
class DegenerateModelError : public Error {
public:
    using Error::Error;
};

class IntegrationError : public Error {
public:
    using Error::Error;
};

}  // namespace gupjc
