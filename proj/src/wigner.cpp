#include "gupjc/wigner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gupjc/errors.hpp"
#include "gupjc/parallel.hpp"

namespace gupjc {

namespace {

constexpr double kLeakageTol = 1e-8;

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo)) {
        throw std::invalid_argument("GridSpec: need at least two points on a non-empty range");
    }
    std::vector<double> axis(points);
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        axis[i] = lo + step * i;
    }
    axis.back() = hi;
    return axis;
}

double trapezoid_weight(std::size_t i, std::size_t n) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; }

}  // namespace

GridSpec GridSpec::square(double half_width, int points) {
    return {-half_width, half_width, points, -half_width, half_width, points};
}

std::vector<double> GridSpec::re_axis() const { return linspace(re_min, re_max, re_points); }
std::vector<double> GridSpec::im_axis() const { return linspace(im_min, im_max, im_points); }

double GridSpec::max_abs() const {
    const double x = std::max(std::abs(re_min), std::abs(re_max));
    const double y = std::max(std::abs(im_min), std::abs(im_max));
    return std::hypot(x, y);
}

double WignerGrid::integral() const {
    const std::size_t nx = re_axis.size();
    const std::size_t ny = im_axis.size();
    const double dx = (re_axis.back() - re_axis.front()) / static_cast<double>(nx - 1);
    const double dy = (im_axis.back() - im_axis.front()) / static_cast<double>(ny - 1);
    double sum = 0.0;
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            sum += trapezoid_weight(ix, nx) * trapezoid_weight(iy, ny) *
                   values(static_cast<Eigen::Index>(iy), static_cast<Eigen::Index>(ix));
        }
    }
    return sum * dx * dy;
}

int WignerEvaluator::default_extra_levels(int state_ncut, double max_abs_z) {
    const double r = max_abs_z;
    return static_cast<int>(std::ceil(2.0 * r * r + 10.0 + 6.0 * r * std::sqrt(state_ncut + 1.0)));
}

WignerEvaluator::WignerEvaluator(int state_ncut, double max_abs_z, int extra_levels)
    : state_ncut_(state_ncut), max_abs_z_(max_abs_z) {
    if (state_ncut < 1) {
        throw std::invalid_argument("WignerEvaluator: state cutoff must be >= 1");
    }
    const int extra = extra_levels < 0 ? default_extra_levels(state_ncut, max_abs_z) : extra_levels;
    padded_ncut_ = state_ncut + extra;
    // exp(r (a^dag - a)) = exp(-i r G) with G = i (a^dag - a) Hermitian.
    const Matrix a = build_annihilation(padded_ncut_).m;
    const Matrix generator = I * (a.adjoint() - a);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(generator);
    if (solver.info() != Eigen::Success) {
        throw Error("WignerEvaluator: eigendecomposition failed");
    }
    evals_ = solver.eigenvalues();
    evecs_ = solver.eigenvectors();
    // Parity anticommutes with G, so it maps the eigenvector of g_j onto
    // that of -g_j = g_{P-1-j} up to a phase.
    const Eigen::Index dim = evals_.size();
    parity_phase_.resize(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        cplx overlap{};
        for (Eigen::Index k = 0; k < dim; ++k) {
            overlap += std::conj(evecs_(k, dim - 1 - j)) * (k % 2 == 0 ? 1.0 : -1.0) * evecs_(k, j);
        }
        if (std::abs(std::abs(overlap) - 1.0) > 1e-9) {
            throw Error("WignerEvaluator: generator spectrum is not parity-paired");
        }
        parity_phase_(j) = overlap;
    }
}

double WignerEvaluator::operator()(const FockVector& psi, cplx z) const {
    const int ncut = psi.ncut();
    if (ncut > state_ncut_) {
        throw std::invalid_argument("WignerEvaluator: state cutoff exceeds evaluator cutoff");
    }
    if (std::abs(z) > max_abs_z_ * (1.0 + 1e-12)) {
        throw std::invalid_argument("WignerEvaluator: |z| beyond the padded range");
    }
    // D(w) = exp(i theta N) D(r) exp(-i theta N) with w = -z = r e^{i theta};
    // the outer phase drops out of the parity sum.
    const cplx w = -z;
    const double r = std::abs(w);
    const double theta = std::arg(w);
    Vector rotated(ncut + 1);
    for (int k = 0; k <= ncut; ++k) {
        rotated(k) = psi[k] * std::polar(1.0, -theta * k);
    }
    Vector y = evecs_.topRows(ncut + 1).adjoint() * rotated;
    for (Eigen::Index j = 0; j < y.size(); ++j) {
        y(j) *= std::polar(1.0, -r * evals_(j));
    }

    const Eigen::Index top = evecs_.rows() - 1;
    const auto amp = [&](Eigen::Index k) { return evecs_.row(k).transpose().cwiseProduct(y).sum(); };
    const double leakage = std::norm(amp(top)) + std::norm(amp(top - 1));
    if (leakage > kLeakageTol) {
        throw TruncationError("wigner: displaced state leaks " + std::to_string(leakage) +
                              " into the padding boundary; increase padding");
    }
    cplx parity{};
    for (Eigen::Index j = 0; j <= top; ++j) {
        parity += std::conj(y(top - j)) * parity_phase_(j) * y(j);
    }
    return 2.0 / std::numbers::pi * parity.real() / psi.amps().squaredNorm();
}

double wigner_at(const FockVector& psi, cplx z) {
    return WignerEvaluator(psi.ncut(), std::abs(z))(psi, z);
}

WignerGrid wigner_of_state(const FockVector& psi, const GridSpec& grid,
                           const WignerOptions& options) {
    WignerGrid out;
    out.re_axis = grid.re_axis();
    out.im_axis = grid.im_axis();
    out.values.resize(static_cast<Eigen::Index>(out.im_axis.size()),
                      static_cast<Eigen::Index>(out.re_axis.size()));
    const WignerEvaluator evaluator(psi.ncut(), grid.max_abs(), options.extra_levels);
    parallel_for(out.im_axis.size(), options.threads, [&](std::size_t iy) {
        for (std::size_t ix = 0; ix < out.re_axis.size(); ++ix) {
            out.values(static_cast<Eigen::Index>(iy), static_cast<Eigen::Index>(ix)) =
                evaluator(psi, cplx{out.re_axis[ix], out.im_axis[iy]});
        }
    });
    return out;
}

WignerDifference wigner_difference(const FockVector& psi, cplx reference_alpha,
                                   const GridSpec& grid, const WignerOptions& options) {
    const FockVector reference = coherent_state(reference_alpha, psi.ncut());
    const WignerGrid w_psi = wigner_of_state(psi, grid, options);
    const WignerGrid w_ref = wigner_of_state(reference, grid, options);

    WignerDifference out;
    out.delta = w_psi;
    out.delta.values -= w_ref.values;
    out.reference_peak = w_ref.values.maxCoeff();
    Eigen::Index iy = 0;
    Eigen::Index ix = 0;
    out.max_abs = out.delta.values.cwiseAbs().maxCoeff(&iy, &ix);
    out.max_re = out.delta.re_axis[static_cast<std::size_t>(ix)];
    out.max_im = out.delta.im_axis[static_cast<std::size_t>(iy)];
    out.delta_at_max = out.delta.values(iy, ix);
    out.reference_at_max = w_ref.values(iy, ix);
    return out;
}

double wigner_precision_ratio(double delta_w_max, double w_ref) {
    if (!(w_ref > 0.0)) {
        throw std::invalid_argument("wigner_precision_ratio: reference value must be positive");
    }
    return delta_w_max / w_ref;
}

}  // namespace gupjc
