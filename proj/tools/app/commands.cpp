#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "gupjc/dispersive.hpp"
#include "gupjc/dynamics.hpp"
#include "gupjc/gup.hpp"
#include "gupjc/rwa_validity.hpp"
#include "gupjc/wigner.hpp"

namespace gupjc::app {

using nlohmann::json;

namespace {

GupParams gup_params(const RunConfig& cfg) {
    return GupParams::from_gamma(cfg.gup.gamma, cfg.gup.delta, cfg.gup.epsilon);
}

InteractionConfig interaction(const RunConfig& cfg) {
    return {cfg.interaction.omega, cfg.interaction.omega0, cfg.interaction.lambda};
}

json coefficients_json(const GupCoefficients& c) {
    return {{"phi", c.phi}, {"chi", c.chi}, {"beta", c.beta}, {"xi_mag", c.xi_mag}, {"omega", c.omega}};
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> t(points);
    for (int i = 0; i < points; ++i) {
        t[i] = points == 1 ? hi : lo + (hi - lo) * i / (points - 1);
    }
    return t;
}

double fourth_moment(const Vector& amps) {
    double s = 0.0;
    for (Eigen::Index n = 0; n < amps.size(); ++n) {
        const double nn = static_cast<double>(n);
        s += nn * nn * nn * nn * std::norm(amps(n));
    }
    return s;
}

struct DispersiveSetup {
    GupCoefficients coefficients;
    DispersiveConfig config;
    Atom atom;
    /// Rotated coherent amplitude the evolved state is compared against.
    cplx reference_alpha;
};

DispersiveSetup dispersive_setup(const RunConfig& cfg) {
    const InteractionConfig ic = interaction(cfg);
    const GupCoefficients c = derive_coefficients(gup_params(cfg), ic.omega);
    const double mu = cfg.dispersive.mu_from_interaction ? ic.mu() : cfg.dispersive.mu;
    const DispersiveConfig d{mu, c.phi, cfg.dispersive.alpha, cfg.dispersive.t, cfg.dispersive.ncut};
    const double sign = cfg.dispersive.atom == Atom::ground ? 1.0 : -1.0;
    return {c, d, cfg.dispersive.atom, d.alpha * std::polar(1.0, sign * mu * d.t)};
}

const Vector& field_part(const AtomFieldState& s, Atom atom) {
    return atom == Atom::ground ? s.amps_g : s.amps_e;
}

}  // namespace

Outputs cmd_rabi(const RunConfig& cfg) {
    Outputs out{cfg.output_dir, {}};
    const InteractionConfig ic = interaction(cfg);
    const GupCoefficients c = derive_coefficients(gup_params(cfg), ic.omega);
    const int n = cfg.rabi.n;
    if (n < 0 || cfg.rabi.n_max < 0 || cfg.rabi.points < 2 || !(cfg.rabi.periods > 0.0)) {
        throw std::invalid_argument("rabi: need n, n_max >= 0, points >= 2 and periods > 0");
    }
    const double half = half_rabi_frequency(n, ic.lambda, c.phi);
    if (!(half > 0.0)) {
        throw std::invalid_argument("rabi: non-positive oscillation frequency");
    }
    const auto t = linspace(0.0, cfg.rabi.periods * 2.0 * std::numbers::pi / half, cfg.rabi.points);

    NumericValidation numeric;
    if (cfg.rabi.numeric) {
        numeric = validate_against_numeric(n, ic, c, t, n + 2);
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    {
        CsvWriter csv(out.add("inversion.csv"),
                      {"t", "w_first_order", "w_printed", "w_numeric", "ce_analytic_re", "ce_analytic_im",
                       "cg_analytic_re", "cg_analytic_im", "ce_numeric_re", "ce_numeric_im",
                       "cg_numeric_re", "cg_numeric_im"});
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto a = analytic_amplitudes(n, ic, c, t[i]);
            const auto w = atomic_inversion(n, ic, c, t[i]);
            const bool num = cfg.rabi.numeric;
            const cplx ce = num ? numeric.numeric_excited[i] : cplx{nan, nan};
            const cplx cg = num ? numeric.numeric_ground[i] : cplx{nan, nan};
            csv.row({t[i], w.first_order, w.from_amplitudes, num ? numeric.numeric_inversion[i] : nan,
                     a.excited.real(), a.excited.imag(), a.ground.real(), a.ground.imag(), ce.real(),
                     ce.imag(), cg.real(), cg.imag()});
        }
    }
    {
        CsvWriter csv(out.add("rabi_shift.csv"),
                      {"n", "omega_std", "omega_qg", "delta_omega", "omega_qg_half"});
        for (int k = 0; k <= cfg.rabi.n_max; ++k) {
            const RabiSolution s = rabi_shift(k, ic, c);
            csv.row({double(k), s.omega_std, s.omega_qg, s.delta_omega, s.omega_qg_half});
        }
    }
    const RabiSolution s = rabi_shift(n, ic, c);
    const double chi_term = chi_expansion_parameter(n, ic, c);
    json summary = {{"n", n},
                    {"coefficients", coefficients_json(c)},
                    {"omega_std", s.omega_std},
                    {"omega_qg", s.omega_qg},
                    {"omega_qg_half", s.omega_qg_half},
                    {"delta_omega", s.delta_omega},
                    {"chi_expansion_parameter", chi_term},
                    {"outside_validity", std::abs(chi_term) > 0.1}};
    if (cfg.rabi.numeric) {
        summary["max_amp_err"] = numeric.max_amp_err;
        summary["max_inv_err"] = numeric.max_inv_err;
    }
    if (std::abs(chi_term) > 0.1) {
        std::cerr << "warning: 4 sqrt(n+1) chi omega / lambda = " << chi_term
                  << " exceeds 0.1; the first-order amplitudes are outside their range\n";
    }
    write_json(out.add("summary.json"), summary);
    return out;
}

Outputs cmd_dispersive(const RunConfig& cfg) {
    Outputs out{cfg.output_dir, {}};
    const DispersiveSetup s = dispersive_setup(cfg);
    const DispersiveConfig& d = s.config;

    const PhotonAddedDecomposition dec = photon_added_decomposition(d, s.atom);
    const AtomFieldState exact = evolve_dispersive_exact(d, s.atom);
    {
        CsvWriter csv(out.add("exact_state.csv"), {"n", "cg_re", "cg_im", "ce_re", "ce_im"});
        for (int k = 0; k <= d.ncut; ++k) {
            csv.row({double(k), exact.amps_g(k).real(), exact.amps_g(k).imag(), exact.amps_e(k).real(),
                     exact.amps_e(k).imag()});
        }
    }
    const double n4 = fourth_moment(coherent_state(d.alpha, d.ncut).amps());
    {
        CsvWriter csv(out.add("fidelity.csv"), {"t", "linearity_parameter", "infidelity", "bound"});
        for (const double tk : linspace(0.0, d.t, std::max(cfg.dispersive.t_points, 1))) {
            DispersiveConfig dk = d;
            dk.t = tk;
            const auto deck = photon_added_decomposition(dk, s.atom);
            const auto exk = evolve_dispersive_exact(dk, s.atom);
            const double g = 2.0 * d.phi * d.mu * tk;
            csv.row({tk, dk.linearity_parameter(),
                     1.0 - fidelity(field_part(exk, s.atom), deck.assemble(d.ncut).amps()), g * g * n4});
        }
    }
    const double fid = fidelity(field_part(exact, s.atom), dec.assemble(d.ncut).amps());
    const json report = {{"atom", s.atom == Atom::ground ? "ground" : "excited"},
                         {"coefficients", coefficients_json(s.coefficients)},
                         {"mu", d.mu},
                         {"t", d.t},
                         {"alpha", complex_json(d.alpha)},
                         {"rotated_alpha", complex_json(dec.rotated_alpha)},
                         {"base_amp", complex_json(dec.base_amp)},
                         {"pacs1_amp", complex_json(dec.pacs1_amp)},
                         {"pacs2_amp", complex_json(dec.pacs2_amp)},
                         {"pacs1_times_normalization", std::abs(dec.pacs1_amp * dec.normalization)},
                         {"pacs2_times_normalization", std::abs(dec.pacs2_amp * dec.normalization)},
                         {"normalization", dec.normalization},
                         {"k1", dec.k1},
                         {"k2", dec.k2},
                         {"linearity_parameter", d.linearity_parameter()},
                         {"time_bound", d.time_bound()},
                         {"n4_moment", n4},
                         {"fidelity", fid}};
    write_json(out.add("decomposition.json"), report);
    return out;
}

Outputs cmd_wigner_diff(const RunConfig& cfg) {
    Outputs out{cfg.output_dir, {}};
    const DispersiveSetup s = dispersive_setup(cfg);
    const DispersiveConfig& d = s.config;

    FockVector psi = coherent_state(s.reference_alpha, d.ncut);
    if (cfg.wigner.state == "exact") {
        psi = FockVector(field_part(evolve_dispersive_exact(d, s.atom), s.atom));
    } else if (cfg.wigner.state == "decomposition") {
        psi = photon_added_decomposition(d, s.atom).assemble(d.ncut);
    } else if (cfg.wigner.state != "coherent") {
        throw std::invalid_argument("wigner.state must be exact, decomposition or coherent");
    }
    const WignerOptions options{cfg.threads, cfg.wigner.extra_levels};
    const WignerDifference wd = wigner_difference(psi, s.reference_alpha, cfg.wigner.grid, options);

    const auto& v = wd.delta.values;
    {
        CsvWriter csv(out.add("delta_w.csv"), {"x", "y", "delta_w"});
        for (Eigen::Index iy = 0; iy < v.rows(); ++iy) {
            for (Eigen::Index ix = 0; ix < v.cols(); ++ix) {
                csv.row({wd.delta.re_axis[ix], wd.delta.im_axis[iy], v(iy, ix)});
            }
        }
    }
    json rows = json::array();
    for (Eigen::Index iy = 0; iy < v.rows(); ++iy) {
        json row = json::array();
        for (Eigen::Index ix = 0; ix < v.cols(); ++ix) {
            row.push_back(v(iy, ix));
        }
        rows.push_back(std::move(row));
    }
    write_json(out.add("delta_w.json"),
               {{"re_axis", wd.delta.re_axis}, {"im_axis", wd.delta.im_axis}, {"values", rows}});

    const double peak = 2.0 / std::numbers::pi;
    json summary = {{"state", cfg.wigner.state},
                    {"reference_alpha", complex_json(s.reference_alpha)},
                    {"coefficients", coefficients_json(s.coefficients)},
                    {"perturbation_scale", d.phi * d.mu * d.t},
                    {"max_abs_delta_w", wd.max_abs},
                    {"max_location", json::array({wd.max_re, wd.max_im})},
                    {"delta_w_at_max", wd.delta_at_max},
                    {"reference_w_at_max", wd.reference_at_max},
                    {"reference_w_peak", wd.reference_peak},
                    {"max_abs_relative_to_2_over_pi", wd.max_abs / peak}};
    if (wd.reference_peak > 0.0) {
        summary["precision_ratio_peak"] = wigner_precision_ratio(wd.max_abs, wd.reference_peak);
    }
    if (wd.reference_at_max > 0.0) {
        summary["precision_ratio_pointwise"] = wigner_precision_ratio(wd.max_abs, wd.reference_at_max);
    }
    write_json(out.add("summary.json"), summary);
    return out;
}

Outputs cmd_zeta_maps(const RunConfig& cfg) {
    Outputs out{cfg.output_dir, {}};
    ZetaMapSpec spec;
    spec.n = cfg.zeta.n;
    spec.params = gup_params(cfg);
    spec.omega_min = cfg.zeta.omega_min;
    spec.omega_max = cfg.zeta.omega_max;
    spec.omega_points = cfg.zeta.omega_points;
    spec.delta_min = cfg.zeta.delta_min;
    spec.delta_max = cfg.zeta.delta_max;
    spec.delta_points = cfg.zeta.delta_points;
    spec.lambda = cfg.interaction.lambda;
    spec.threads = cfg.threads;
    const ZetaMap map = zeta_map(spec);

    {
        CsvWriter csv(out.add("zeta_map.csv"),
                      {"omega", "delta", "zeta_lq", "zeta_rq", "zeta_lq_signed", "zeta_rq_signed"});
        for (std::size_t i = 0; i < map.delta_axis.size(); ++i) {
            for (std::size_t j = 0; j < map.omega_axis.size(); ++j) {
                const InteractionConfig ic(map.omega_axis[j], map.omega_axis[j] + map.delta_axis[i], spec.lambda);
                const auto r = static_cast<Eigen::Index>(i);
                const auto k = static_cast<Eigen::Index>(j);
                csv.row({map.omega_axis[j], map.delta_axis[i], map.zeta_lq(r, k), map.zeta_rq(r, k),
                         zeta_lq_signed(spec.n, ic, spec.params), zeta_rq_signed(spec.n, ic, spec.params)});
            }
        }
    }
    json summary = {{"n", spec.n},
                    {"gamma", spec.params.gamma},
                    {"gamma0", spec.params.gamma0},
                    {"delta", spec.params.delta},
                    {"epsilon", spec.params.epsilon},
                    {"zeta_lq_range", json::array({map.zeta_lq.minCoeff(), map.zeta_lq.maxCoeff()})},
                    {"zeta_rq_range", json::array({map.zeta_rq.minCoeff(), map.zeta_rq.maxCoeff()})}};
    for (std::size_t j = 0; j < map.omega_axis.size(); ++j) {
        if (map.omega_axis[j] == 1e16) {
            const auto k = static_cast<Eigen::Index>(j);
            summary["omega_1e16"] = {{"max_zeta_lq", map.zeta_lq.col(k).maxCoeff()},
                                     {"max_zeta_rq", map.zeta_rq.col(k).maxCoeff()}};
        }
    }
    write_json(out.add("summary.json"), summary);
    return out;
}

Outputs run_command(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    std::filesystem::create_directories(cfg.output_dir);
    Outputs out;
    if (cfg.command == "rabi") {
        out = cmd_rabi(cfg);
    } else if (cfg.command == "dispersive") {
        out = cmd_dispersive(cfg);
    } else if (cfg.command == "wigner-diff") {
        out = cmd_wigner_diff(cfg);
    } else if (cfg.command == "zeta-maps") {
        out = cmd_zeta_maps(cfg);
    } else {
        throw std::invalid_argument("unknown command '" + cfg.command + "'");
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    finish_run(cfg, out, wall);
    return out;
}

}  // namespace gupjc::app
