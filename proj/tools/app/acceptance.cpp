#include "acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>

#include <unistd.h>

#include "commands.hpp"
#include "config.hpp"
#include "oracles.hpp"

#include "gupjc/dispersive.hpp"
#include "gupjc/dynamics.hpp"
#include "gupjc/gup.hpp"
#include "gupjc/rwa_validity.hpp"
#include "gupjc/wigner.hpp"

namespace gupjc::app {

namespace {

// Tolerances and limits, one block per criterion.
constexpr double kJcmAmpTol = 1e-9;
constexpr double kJcmLimit = 1.0;

constexpr double kRabiOrder = 1e-12;
constexpr double kRabiClosedFormTol = 1e-12;
constexpr double kRabiLimit = 1.0;

constexpr int kIdentityDraws = 10000;
constexpr double kIdentityTol = 1e-15;
constexpr double kIdentityLimit = 1.0;

constexpr int kCommutatorNcut = 20;
constexpr double kSlope = 2.0;
constexpr double kSlopeTol = 0.1;
constexpr double kCommutatorExactTol = 1e-12;
constexpr double kCommutatorLimit = 5.0;

constexpr double kResumTol = 1e-10;
constexpr double kResumLimit = 1.0;

constexpr double kFidelityFactor = 10.0;
constexpr double kLaguerreTol = 1e-10;
constexpr double kDecompositionLimit = 2.0;

constexpr double kWignerTol = 1e-8;
constexpr double kWignerIntegralTol = 1e-3;
constexpr double kWignerLimit = 60.0;

constexpr double kPrecisionTarget = 1e-3;
constexpr double kOrderOfMagnitude = 1.0;
constexpr double kFig1Limit = 120.0;

constexpr double kZetaSpot = 4e-4;
constexpr double kZetaSpotTol = 0.2;
constexpr double kZetaLimit = 5.0;

constexpr double kPerturbationLimit = 30.0;

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(4);
    s << x;
    return s.str();
}

double log_distance(double value, double target) { return std::abs(std::log10(value / target)); }

bool slopes_within(const std::vector<double>& values, double* worst) {
    bool ok = true;
    *worst = oracle::halving_slope(values[0], values[1]);
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double s = oracle::halving_slope(values[i - 1], values[i]);
        if (std::abs(s - kSlope) > std::abs(*worst - kSlope)) {
            *worst = s;
        }
        ok = ok && std::abs(s - kSlope) <= kSlopeTol;
    }
    return ok;
}

struct Outcome {
    bool passed = false;
    std::string detail;
};

Outcome jcm_oracle() {
    double worst = 0.0;
    for (const int n : {0, 1, 5, 20}) {
        const InteractionConfig ic(1e3, 1e3, 1.0);
        const double period = 2.0 * std::numbers::pi / std::sqrt(n + 1.0);
        std::vector<double> t(1001);
        for (std::size_t i = 0; i < t.size(); ++i) {
            t[i] = 10.0 * period * static_cast<double>(i) / static_cast<double>(t.size() - 1);
        }
        const auto v = validate_against_numeric(n, ic, GupCoefficients{}, t, n + 2);
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto [ce, cg] = oracle::jcm_amplitudes(n, 1.0, t[i]);
            worst = std::max({worst, std::abs(v.numeric_excited[i] - ce), std::abs(v.numeric_ground[i] - cg)});
        }
    }
    return {worst < kJcmAmpTol, "max amplitude error " + fmt(worst)};
}

Outcome rabi_shift_order() {
    const InteractionConfig ic(1e16, 1e16, 1.0);
    const GupCoefficients c = derive_coefficients(GupParams::from_gamma(1e3, 1.0, 1.0), ic.omega);
    const double phi = 1.054571817e-34 * 1e16 * 1e6 * (3.0 - 2.0);
    const double closed = 2.0 * std::sqrt(2.0) * 2.0 * phi;
    const double shift = rabi_shift(1, ic, c).delta_omega;
    const double rel = std::abs(shift - closed) / closed;
    const double order = log_distance(shift, kRabiOrder);
    return {order <= kOrderOfMagnitude && rel <= kRabiClosedFormTol,
            "delta_omega " + fmt(shift) + " rad/s, closed-form rel err " + fmt(rel)};
}

Outcome coefficient_identity(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < kIdentityDraws; ++i) {
        const double gamma = std::pow(10.0, -3.0 + 8.0 * unit(rng));
        const double delta = -3.0 + 6.0 * unit(rng);
        const double epsilon = -3.0 + 6.0 * unit(rng);
        const double omega = std::pow(10.0, 6.0 + 12.0 * unit(rng));
        const GupCoefficients c = derive_coefficients(GupParams::from_gamma(gamma, delta, epsilon), omega);
        const double scale = std::max({std::abs(8.0 * c.chi), std::abs(c.phi), std::abs(2.0 * c.beta)});
        if (scale > 0.0) {
            worst = std::max(worst, std::abs(8.0 * c.chi - c.phi - 2.0 * c.beta) / scale);
        }
    }
    return {worst < kIdentityTol, std::to_string(kIdentityDraws) + " draws, max rel residual " + fmt(worst)};
}

Outcome commutator_scaling() {
    const InteractionConfig ic(100.0, 1100.0, 1.0);
    const double mu = ic.mu();
    const double exact = commutator_check(ic, GupCoefficients{}, kCommutatorNcut).residual;
    std::vector<double> residuals;
    for (double phi = 1e-6; residuals.size() < 5; phi /= 2.0) {
        residuals.push_back(
            commutator_check(ic, GupCoefficients::synthetic(phi, 0.0, 0.0, ic.omega), kCommutatorNcut).residual);
    }
    double worst = 0.0;
    const bool ok = slopes_within(residuals, &worst);
    return {ok && exact < kCommutatorExactTol * mu,
            "worst slope " + fmt(worst) + ", residual at phi=0 " + fmt(exact / mu) + " mu"};
}

Outcome dispersive_resummation() {
    const DispersiveConfig d{1e5, 0.0, 1.0, 1e3, 30};
    const AtomFieldState s = evolve_dispersive_exact(d, Atom::ground);
    const double infidelity =
        1.0 - fidelity(s.amps_g, coherent_state(std::polar(1.0, d.mu * d.t), d.ncut).amps());
    return {infidelity < kResumTol, "infidelity " + fmt(infidelity)};
}

DispersiveConfig fig1_dispersive() {
    const GupCoefficients c = derive_coefficients(GupParams::from_gamma(1e3, 1.0, 1.0), 1e15);
    return {1e5, c.phi, 1.0, 1e3, 30};
}

Outcome decomposition_fidelity() {
    const DispersiveConfig d = fig1_dispersive();
    double n4 = 0.0;
    for (int n = 0; n <= 60; ++n) {
        n4 += std::pow(n, 4) * std::norm(oracle::coherent_amp(1.0, n));
    }
    const auto dec = photon_added_decomposition(d, Atom::ground);
    const double f = fidelity(evolve_dispersive_exact(d, Atom::ground).amps_g, dec.assemble(d.ncut).amps());
    const double g = 2.0 * d.phi * d.mu * d.t;
    const double bound = 1.0 - kFidelityFactor * g * g * n4;
    const double k1 = std::sqrt(oracle::laguerre_sum(1, -1.0) * oracle::factorial(1));
    const double k2 = std::sqrt(oracle::laguerre_sum(2, -1.0) * oracle::factorial(2));
    const double kerr = std::max(std::abs(dec.k1 - k1), std::abs(dec.k2 - k2));
    return {f >= bound && kerr < kLaguerreTol,
            "1-F " + fmt(1.0 - f) + " vs bound " + fmt(1.0 - bound) + ", k error " + fmt(kerr)};
}

Outcome wigner_closed_forms(int threads) {
    const GridSpec grid = GridSpec::square(4.0, 201);
    const WignerOptions opt{threads, -1};
    double worst = 0.0;
    double worst_integral = 0.0;
    const auto compare = [&](const FockVector& psi, const std::function<double(cplx)>& exact) {
        const WignerGrid w = wigner_of_state(psi, grid, opt);
        for (std::size_t iy = 0; iy < w.im_axis.size(); ++iy) {
            for (std::size_t ix = 0; ix < w.re_axis.size(); ++ix) {
                const double v = w.values(static_cast<Eigen::Index>(iy), static_cast<Eigen::Index>(ix));
                worst = std::max(worst, std::abs(v - exact({w.re_axis[ix], w.im_axis[iy]})));
            }
        }
        worst_integral = std::max(worst_integral, std::abs(w.integral() - 1.0));
    };
    const cplx alpha{1.0, 0.5};
    compare(coherent_state(alpha, 30), [&](cplx z) { return oracle::wigner_coherent(z, alpha); });
    for (int n = 0; n <= 5; ++n) {
        compare(FockVector::basis(n, n + 2), [n](cplx z) { return oracle::wigner_fock(n, z); });
    }
    const WignerGrid pacs = wigner_of_state(photon_added_coherent_state(1.0, 1, 30), grid, opt);
    const double min_pacs = pacs.values.minCoeff();
    return {worst < kWignerTol && worst_integral < kWignerIntegralTol && min_pacs < 0.0,
            "max error " + fmt(worst) + ", max |integral-1| " + fmt(worst_integral) + ", min W(|1,1>) " +
                fmt(min_pacs)};
}

Outcome fig1_magnitude(int threads) {
    const DispersiveConfig d = fig1_dispersive();
    const FockVector psi(evolve_dispersive_exact(d, Atom::ground).amps_g);
    const cplx reference = d.alpha * std::polar(1.0, d.mu * d.t);
    const auto wd = wigner_difference(psi, reference, GridSpec::square(4.0, 201), {threads, -1});
    const double relative = wd.max_abs / (2.0 / std::numbers::pi);
    const double scale = d.phi * d.mu * d.t;
    const double ratio = wigner_precision_ratio(wd.max_abs, wd.reference_peak);
    const double pointwise = wigner_precision_ratio(wd.max_abs, wd.reference_at_max);
    const bool magnitude = log_distance(relative, scale) <= kOrderOfMagnitude;
    const bool precision = log_distance(ratio, kPrecisionTarget) <= kOrderOfMagnitude;
    return {magnitude && precision,
            "max|dW|/(2/pi) " + fmt(relative) + " vs phi*mu*t " + fmt(scale) +
                (magnitude ? " (ok)" : " (off)") + "; dW/W_peak " + fmt(ratio) + " vs " + fmt(kPrecisionTarget) +
                (precision ? " (ok)" : " (off)") + "; dW/W at the max " + fmt(pointwise)};
}

Outcome zeta_slices(int threads) {
    ZetaMapSpec s2 = ZetaMapSpec::fig2();
    ZetaMapSpec s3 = ZetaMapSpec::fig3();
    s2.threads = s3.threads = threads;
    double lq_max = 0.0;
    double rq_max = 0.0;
    for (const double delta : log_axis(1e3, 1e5, 401)) {
        const InteractionConfig ic(1e16, 1e16 + delta, 1.0);
        lq_max = std::max(lq_max, zeta_lq(s2.n, ic, s2.params));
        rq_max = std::max(rq_max, zeta_rq(s3.n, ic, s3.params));
    }
    const ZetaMap m2 = zeta_map(s2);
    const ZetaMap m3 = zeta_map(s3);
    bool column = false;
    for (std::size_t j = 0; j < m2.omega_axis.size(); ++j) {
        if (std::abs(m2.omega_axis[j] / 1e16 - 1.0) < 1e-12) {
            const auto k = static_cast<Eigen::Index>(j);
            column = true;
            lq_max = std::max(lq_max, m2.zeta_lq.col(k).maxCoeff());
            rq_max = std::max(rq_max, m3.zeta_rq.col(k).maxCoeff());
        }
    }
    const InteractionConfig spot(1e16, 1e16 + 1e4, 1.0);
    const double lq_spot = zeta_lq(s2.n, spot, s2.params);
    const double rq_spot = zeta_rq(s3.n, spot, s3.params);
    const bool spots = std::abs(lq_spot / kZetaSpot - 1.0) <= kZetaSpotTol &&
                       std::abs(rq_spot / kZetaSpot - 1.0) <= kZetaSpotTol;
    return {column && lq_max < 1.0 && rq_max < 1.0 && spots,
            "max zeta_LQ " + fmt(lq_max) + ", max zeta_RQ " + fmt(rq_max) + ", spots " + fmt(lq_spot) + " / " +
                fmt(rq_spot)};
}

Outcome perturbation_scaling() {
    std::vector<double> t(201);
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = 10.0 * static_cast<double>(i) / 200.0;
    }
    const GupCoefficients c = GupCoefficients::synthetic(0.05, 0.0, 0.1, 10.0);
    std::vector<double> rel;
    for (const double lambda : {1e-3, 5e-4, 2.5e-4, 1.25e-4}) {
        rel.push_back(perturbation_cross_check(2, InteractionConfig(10.0, 12.0, lambda), c, t, 6).max_rel_err);
    }
    double worst = 0.0;
    const bool ok = slopes_within(rel, &worst);
    return {ok, "rel discrepancy " + fmt(rel.front()) + " at lambda=1e-3, worst slope " + fmt(worst)};
}

std::vector<char> read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism(const AcceptanceOptions& options) {
    std::filesystem::path root = options.work_dir;
    bool owned = false;
    if (root.empty()) {
        std::string pattern = (std::filesystem::temp_directory_path() / "gupjc-verify-XXXXXX").string();
        if (mkdtemp(pattern.data()) == nullptr) {
            return {false, "could not create a scratch directory"};
        }
        root = pattern;
        owned = true;
    }
    struct Case {
        std::string command;
        std::string preset;
    };
    const std::vector<Case> cases{{"rabi", "default"},
                                  {"dispersive", "fig1"},
                                  {"wigner-diff", "fig1"},
                                  {"zeta-maps", "fig2"},
                                  {"zeta-maps", "fig3"}};
    int compared = 0;
    std::string mismatch;
    for (const Case& c : cases) {
        RunConfig cfg = preset(c.preset);
        cfg.command = c.command;
        cfg.seed = options.seed;
        cfg.threads = options.threads;
        cfg.output_dir = (root / (c.command + "-" + c.preset)).string();
        const Outputs first = run_command(cfg);
        std::vector<std::vector<char>> before;
        for (const auto& f : first.files) {
            before.push_back(read_bytes(first.dir / f));
        }
        const Outputs second = run_command(load_config((first.dir / "run_config.json").string()));
        for (std::size_t i = 0; i < first.files.size(); ++i) {
            ++compared;
            if (read_bytes(second.dir / first.files[i]) != before[i] && mismatch.empty()) {
                mismatch = c.command + "/" + first.files[i];
            }
        }
    }
    if (owned) {
        std::error_code ec;
        std::filesystem::remove_all(root, ec);
    }
    return {mismatch.empty(), mismatch.empty() ? std::to_string(compared) + " files byte-identical on replay"
                                               : "replay differs: " + mismatch};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    struct Entry {
        int id;
        std::string name;
        double limit;
        std::function<Outcome()> run;
    };
    const int threads = options.threads;
    const std::vector<Entry> entries{
        {1, "standard JCM oracle", kJcmLimit, jcm_oracle},
        {2, "corrected Rabi frequency", kRabiLimit, rabi_shift_order},
        {3, "coefficient identity", kIdentityLimit, [&] { return coefficient_identity(options.seed); }},
        {4, "effective-Hamiltonian commutator", kCommutatorLimit, commutator_scaling},
        {5, "dispersive re-summation", kResumLimit, dispersive_resummation},
        {6, "photon-added decomposition", kDecompositionLimit, decomposition_fidelity},
        {7, "Wigner closed forms", kWignerLimit, [&] { return wigner_closed_forms(threads); }},
        {8, "fig1 Wigner difference magnitude", kFig1Limit, [&] { return fig1_magnitude(threads); }},
        {9, "zeta maps", kZetaLimit, [&] { return zeta_slices(threads); }},
        {10, "perturbation cross-check", kPerturbationLimit, perturbation_scaling},
        {11, "determinism", 0.0, [&] { return determinism(options); }},
    };
    std::vector<CriterionResult> results;
    for (const Entry& e : entries) {
        if (!options.only.empty() && !options.only.contains(e.id)) {
            continue;
        }
        CriterionResult r{e.id, e.name, false, {}, 0.0, e.limit};
        const auto start = std::chrono::steady_clock::now();
        try {
            const Outcome o = e.run();
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& ex) {
            r.detail = std::string("exception: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.limit_seconds > 0.0 && r.seconds > r.limit_seconds) {
            r.passed = false;
            r.detail += "; over the runtime limit";
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream s;
    s << (r.passed ? "[PASS] " : "[FAIL] ") << (r.id < 10 ? " " : "") << r.id << "  " << r.name << "  ("
      << fmt(r.seconds) << " s";
    if (r.limit_seconds > 0.0) {
        s << " / " << r.limit_seconds << " s";
    }
    s << ")  " << r.detail;
    return s.str();
}

}  // namespace gupjc::app
