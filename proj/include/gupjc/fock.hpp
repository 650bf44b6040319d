#pragma once

// Truncated Fock-space linear algebra.
//
// The field basis is |0>, ..., |ncut>. Atom-field operators act on the
// 2(ncut+1)-dimensional product space with the ground block first:
// index n is |g,n>, index (ncut+1)+n is |e,n>.

#include <complex>

#include <Eigen/Dense>

namespace gupjc {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr cplx I{0.0, 1.0};

enum class Atom { ground, excited };

/// Amplitudes of a field state on the truncated number basis.
class FockVector {
public:
    explicit FockVector(Vector amps, double tail_weight = 0.0);

    /// Number state |n> on a basis truncated at ncut.
    static FockVector basis(int n, int ncut);

    int ncut() const noexcept { return static_cast<int>(amps_.size()) - 1; }
    const Vector& amps() const noexcept { return amps_; }
    cplx operator[](int n) const { return amps_(n); }

    /// Probability weight of the exact state that fell beyond ncut.
    double tail_weight() const noexcept { return tail_weight_; }

    double norm() const { return amps_.norm(); }
    double mean_photon_number() const;

private:
    Vector amps_;
    double tail_weight_;
};

/// Coefficients C_{g,n} and C_{e,n} of an atom-field state.
struct AtomFieldState {
    Vector amps_g;
    Vector amps_e;

    int ncut() const noexcept { return static_cast<int>(amps_g.size()) - 1; }
    double norm() const;

    static AtomFieldState product(Atom atom, const FockVector& field);
    static AtomFieldState from_vector(const Vector& v);
    Vector to_vector() const;
};

/// Dense operator on the field space or the atom-field space.
struct OperatorMatrix {
    int ncut = 0;
    bool with_atom = false;
    Matrix m;

    Eigen::Index dim() const noexcept { return m.rows(); }

    /// max |M - M^dagger|
    double hermiticity_residual() const;

    /// Hermitian to 1e-12, scaled by the largest entry when it exceeds one.
    bool is_hermitian() const;
};

Eigen::Index field_dim(int ncut);

/// Index of |g,n> or |e,n> in the atom-field vector.
Eigen::Index atom_field_index(Atom atom, int n, int ncut);

OperatorMatrix build_annihilation(int ncut);
OperatorMatrix build_creation(int ncut);
OperatorMatrix build_number(int ncut);
OperatorMatrix build_identity(int ncut, bool with_atom);

/// |e><g|, |g><e| and |e><e| - |g><g| in the (g, e) ordering.
Eigen::Matrix2cd sigma_plus();
Eigen::Matrix2cd sigma_minus();
Eigen::Matrix2cd sigma_z();

/// atom (x) field on the atom-field space.
OperatorMatrix tensor_with_atom(const Eigen::Matrix2cd& atom, const OperatorMatrix& field);

/// Standard Laguerre polynomial by upward three-term recurrence.
double laguerre(int m, double x);

/// k_{alpha,m} = sqrt(L_m(-|alpha|^2) m!), the norm of a^dagger^m |alpha>.
double pacs_normalizer(cplx alpha, int m);

/// Probability weight of the exact coherent state above ncut.
double coherent_tail_weight(cplx alpha, int ncut);

/// Normalized coherent state; throws TruncationError when the tail weight
/// beyond ncut reaches tail_tol.
FockVector coherent_state(cplx alpha, int ncut, double tail_tol = 1e-12);

/// Photon-added coherent state |alpha, m> = a^dagger^m |alpha> / k_{alpha,m}.
FockVector photon_added_coherent_state(cplx alpha, int m, int ncut, double tail_tol = 1e-12);

/// exp(-i H t) applied through the eigendecomposition of a Hermitian H
/// (stored as H/hbar in rad/s).
class Propagator {
public:
    explicit Propagator(const OperatorMatrix& h_over_hbar);

    Vector apply(double t, const Vector& state) const;
    Matrix unitary(double t) const;

    const Eigen::VectorXd& eigenvalues() const noexcept { return evals_; }
    const Matrix& eigenvectors() const noexcept { return evecs_; }

private:
    Eigen::VectorXd evals_;
    Matrix evecs_;
};

Vector matrix_exponential_apply(const OperatorMatrix& h_over_hbar, double t, const Vector& state);

/// Rejects states whose two highest Fock levels carry more than 1e-6 probability.
void check_truncation_headroom(const FockVector& psi);
void check_truncation_headroom(const AtomFieldState& psi);

FockVector evolve(const OperatorMatrix& h_over_hbar, double t, const FockVector& psi);
AtomFieldState evolve(const OperatorMatrix& h_over_hbar, double t, const AtomFieldState& psi);

/// |<a|b>|^2 for normalized a, b.
double fidelity(const Vector& a, const Vector& b);

}  // namespace gupjc
