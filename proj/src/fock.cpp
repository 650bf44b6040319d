#include "gupjc/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gupjc/errors.hpp"

namespace gupjc {

namespace {

constexpr double kHeadroomTol = 1e-6;

void require_ncut(int ncut, int minimum, const char* what) {
    if (ncut < minimum) {
        throw std::invalid_argument(std::string(what) + ": ncut must be >= " +
                                    std::to_string(minimum) + ", got " + std::to_string(ncut));
    }
}

// Unnormalized e^{-|a|^2/2} a^n / sqrt(n!) for n = 0..ncut.
Vector coherent_amplitudes(cplx alpha, int ncut) {
    Vector amps(ncut + 1);
    amps(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= ncut; ++n) {
        amps(n) = amps(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }
    return amps;
}

}  // namespace

FockVector::FockVector(Vector amps, double tail_weight)
    : amps_(std::move(amps)), tail_weight_(tail_weight) {
    if (amps_.size() < 2) {
        throw std::invalid_argument("FockVector: ncut must be >= 1");
    }
}

FockVector FockVector::basis(int n, int ncut) {
    require_ncut(ncut, 1, "FockVector::basis");
    if (n < 0 || n > ncut) {
        throw TruncationError("FockVector::basis: level " + std::to_string(n) +
                              " outside 0.." + std::to_string(ncut));
    }
    Vector amps = Vector::Zero(ncut + 1);
    amps(n) = 1.0;
    return FockVector(std::move(amps));
}

double FockVector::mean_photon_number() const {
    double mean = 0.0;
    for (Eigen::Index n = 0; n < amps_.size(); ++n) {
        mean += static_cast<double>(n) * std::norm(amps_(n));
    }
    return mean / amps_.squaredNorm();
}

double AtomFieldState::norm() const {
    return std::sqrt(amps_g.squaredNorm() + amps_e.squaredNorm());
}

AtomFieldState AtomFieldState::product(Atom atom, const FockVector& field) {
    AtomFieldState s;
    const Vector zero = Vector::Zero(field.amps().size());
    s.amps_g = atom == Atom::ground ? field.amps() : zero;
    s.amps_e = atom == Atom::excited ? field.amps() : zero;
    return s;
}

AtomFieldState AtomFieldState::from_vector(const Vector& v) {
    if (v.size() % 2 != 0 || v.size() < 4) {
        throw std::invalid_argument("AtomFieldState::from_vector: bad dimension");
    }
    const Eigen::Index d = v.size() / 2;
    return AtomFieldState{v.head(d), v.tail(d)};
}

Vector AtomFieldState::to_vector() const {
    Vector v(amps_g.size() + amps_e.size());
    v << amps_g, amps_e;
    return v;
}

double OperatorMatrix::hermiticity_residual() const {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool OperatorMatrix::is_hermitian() const {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return hermiticity_residual() < 1e-12 * scale;
}

Eigen::Index field_dim(int ncut) { return static_cast<Eigen::Index>(ncut) + 1; }

Eigen::Index atom_field_index(Atom atom, int n, int ncut) {
    return (atom == Atom::excited ? field_dim(ncut) : 0) + n;
}

OperatorMatrix build_annihilation(int ncut) {
    require_ncut(ncut, 1, "build_annihilation");
    Matrix a = Matrix::Zero(ncut + 1, ncut + 1);
    for (int n = 1; n <= ncut; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return {ncut, false, std::move(a)};
}

OperatorMatrix build_creation(int ncut) {
    OperatorMatrix a = build_annihilation(ncut);
    a.m = a.m.adjoint().eval();
    return a;
}

OperatorMatrix build_number(int ncut) {
    require_ncut(ncut, 1, "build_number");
    Matrix n = Matrix::Zero(ncut + 1, ncut + 1);
    for (int k = 0; k <= ncut; ++k) {
        n(k, k) = static_cast<double>(k);
    }
    return {ncut, false, std::move(n)};
}

OperatorMatrix build_identity(int ncut, bool with_atom) {
    const Eigen::Index d = field_dim(ncut) * (with_atom ? 2 : 1);
    return {ncut, with_atom, Matrix::Identity(d, d)};
}

Eigen::Matrix2cd sigma_plus() {
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
    s(1, 0) = 1.0;
    return s;
}

Eigen::Matrix2cd sigma_minus() {
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
    s(0, 1) = 1.0;
    return s;
}

Eigen::Matrix2cd sigma_z() {
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
    s(0, 0) = -1.0;
    s(1, 1) = 1.0;
    return s;
}

OperatorMatrix tensor_with_atom(const Eigen::Matrix2cd& atom, const OperatorMatrix& field) {
    if (field.with_atom) {
        throw std::invalid_argument("tensor_with_atom: operand already includes the atom");
    }
    const Eigen::Index d = field.dim();
    Matrix out = Matrix::Zero(2 * d, 2 * d);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (atom(i, j) != cplx{}) {
                out.block(i * d, j * d, d, d) = atom(i, j) * field.m;
            }
        }
    }
    return {field.ncut, true, std::move(out)};
}

double laguerre(int m, double x) {
    if (m < 0) {
        throw std::invalid_argument("laguerre: order must be >= 0");
    }
    double prev = 1.0;
    if (m == 0) {
        return prev;
    }
    double cur = 1.0 - x;
    for (int k = 1; k < m; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double pacs_normalizer(cplx alpha, int m) {
    if (m < 0) {
        throw std::invalid_argument("pacs_normalizer: m must be >= 0");
    }
    return std::sqrt(laguerre(m, -std::norm(alpha)) * std::tgamma(m + 1.0));
}

double coherent_tail_weight(cplx alpha, int ncut) {
    const double x = std::norm(alpha);
    if (x == 0.0) {
        return 0.0;
    }
    // Poisson terms beyond ncut, summed in log space until they stop mattering.
    double tail = 0.0;
    for (int n = ncut + 1;; ++n) {
        const double term = std::exp(-x + n * std::log(x) - std::lgamma(n + 1.0));
        tail += term;
        if (n > x && term < 1e-18 * std::max(tail, 1e-300)) {
            break;
        }
        if (term == 0.0 && n > x) {
            break;
        }
    }
    return tail;
}

FockVector coherent_state(cplx alpha, int ncut, double tail_tol) {
    require_ncut(ncut, 1, "coherent_state");
    const double tail = coherent_tail_weight(alpha, ncut);
    if (tail >= tail_tol) {
        throw TruncationError("coherent_state: tail weight " + std::to_string(tail) +
                              " beyond ncut=" + std::to_string(ncut) + " exceeds tolerance");
    }
    Vector amps = coherent_amplitudes(alpha, ncut);
    amps /= amps.norm();
    return FockVector(std::move(amps), tail);
}

FockVector photon_added_coherent_state(cplx alpha, int m, int ncut, double tail_tol) {
    if (m < 0) {
        throw std::invalid_argument("photon_added_coherent_state: m must be >= 0");
    }
    if (m == 0) {
        return coherent_state(alpha, ncut, tail_tol);
    }
    require_ncut(ncut, m, "photon_added_coherent_state");
    const double tail = coherent_tail_weight(alpha, ncut);
    if (tail >= tail_tol) {
        throw TruncationError("photon_added_coherent_state: coherent tail weight exceeds tolerance");
    }
    const Vector base = coherent_amplitudes(alpha, ncut);
    Vector amps = Vector::Zero(ncut + 1);
    for (int k = m; k <= ncut; ++k) {
        double ladder = 1.0;
        for (int j = k - m + 1; j <= k; ++j) {
            ladder *= std::sqrt(static_cast<double>(j));
        }
        amps(k) = ladder * base(k - m);
    }
    const double expected = laguerre(m, -std::norm(alpha)) * std::tgamma(m + 1.0);
    const double achieved = amps.squaredNorm();
    if (std::abs(achieved - expected) > 1e-8 * expected) {
        throw TruncationError("photon_added_coherent_state: truncated norm " +
                              std::to_string(achieved) + " misses L_m(-|alpha|^2) m! = " +
                              std::to_string(expected) + "; raise ncut");
    }
    amps /= std::sqrt(achieved);
    return FockVector(std::move(amps), std::max(0.0, 1.0 - achieved / expected));
}

Propagator::Propagator(const OperatorMatrix& h_over_hbar) {
    if (!h_over_hbar.is_hermitian()) {
        throw NonHermitianError("Propagator: Hamiltonian is not Hermitian (residual " +
                                std::to_string(h_over_hbar.hermiticity_residual()) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h_over_hbar.m);
    if (solver.info() != Eigen::Success) {
        throw Error("Propagator: eigendecomposition failed");
    }
    evals_ = solver.eigenvalues();
    evecs_ = solver.eigenvectors();
}

Vector Propagator::apply(double t, const Vector& state) const {
    Vector coeffs = evecs_.adjoint() * state;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs(k) *= std::polar(1.0, -evals_(k) * t);
    }
    return evecs_ * coeffs;
}

Matrix Propagator::unitary(double t) const {
    Vector phases(evals_.size());
    for (Eigen::Index k = 0; k < evals_.size(); ++k) {
        phases(k) = std::polar(1.0, -evals_(k) * t);
    }
    return evecs_ * phases.asDiagonal() * evecs_.adjoint();
}

Vector matrix_exponential_apply(const OperatorMatrix& h_over_hbar, double t, const Vector& state) {
    if (state.size() != h_over_hbar.dim()) {
        throw std::invalid_argument("matrix_exponential_apply: dimension mismatch");
    }
    return Propagator(h_over_hbar).apply(t, state);
}

void check_truncation_headroom(const FockVector& psi) {
    const int top = psi.ncut();
    const double weight = std::norm(psi[top]) + std::norm(psi[top - 1]);
    if (weight > kHeadroomTol) {
        throw TruncationError("state has weight " + std::to_string(weight) +
                              " in the two highest Fock levels; raise ncut");
    }
}

void check_truncation_headroom(const AtomFieldState& psi) {
    const Eigen::Index top = psi.amps_g.size() - 1;
    double weight = 0.0;
    for (Eigen::Index n = top - 1; n <= top; ++n) {
        weight += std::norm(psi.amps_g(n)) + std::norm(psi.amps_e(n));
    }
    if (weight > kHeadroomTol) {
        throw TruncationError("state has weight " + std::to_string(weight) +
                              " in the two highest Fock levels; raise ncut");
    }
}

FockVector evolve(const OperatorMatrix& h_over_hbar, double t, const FockVector& psi) {
    if (h_over_hbar.with_atom) {
        throw std::invalid_argument("evolve: field state under an atom-field Hamiltonian");
    }
    check_truncation_headroom(psi);
    return FockVector(matrix_exponential_apply(h_over_hbar, t, psi.amps()), psi.tail_weight());
}

AtomFieldState evolve(const OperatorMatrix& h_over_hbar, double t, const AtomFieldState& psi) {
    if (!h_over_hbar.with_atom) {
        throw std::invalid_argument("evolve: atom-field state under a field-only Hamiltonian");
    }
    check_truncation_headroom(psi);
    return AtomFieldState::from_vector(matrix_exponential_apply(h_over_hbar, t, psi.to_vector()));
}

double fidelity(const Vector& a, const Vector& b) {
    return std::norm(a.dot(b));
}

}  // namespace gupjc
