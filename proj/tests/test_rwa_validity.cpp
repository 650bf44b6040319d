#include <cmath>
#include <vector>

#include "doctest.h"
#include "gupjc/errors.hpp"
#include "gupjc/rwa_validity.hpp"
#include "oracles.hpp"

using namespace gupjc;

namespace {

std::vector<double> uniform_grid(double t_max, int points) {
    std::vector<double> t(points);
    for (int i = 0; i < points; ++i) {
        t[i] = t_max * i / (points - 1);
    }
    return t;
}

}  // namespace

TEST_SUITE("rwa-validity") {

TEST_CASE("first-order amplitudes") {
    const InteractionConfig cfg(10.0, 13.0, 0.02);
    const GupCoefficients c = GupCoefficients::synthetic(0.01, 0.0, 0.3, 10.0);
    const auto zero = first_order_amplitudes(3, cfg, c, 0.0);
    CHECK(zero.c_gn_minus1 == cplx{});
    CHECK(zero.c_gn_plus1 == cplx{});
    CHECK(zero.c_gn_plus2 == cplx{});
    CHECK(first_order_amplitudes(3, cfg, GupCoefficients{}, 0.7).c_gn_plus2 == cplx{});

    const double t = 0.37;
    const auto a = first_order_amplitudes(3, cfg, c, t);
    CHECK(std::abs(a.c_gn_minus1 - 0.02 * std::sqrt(3.0) * (std::polar(1.0, -23.0 * t) - 1.0) / 23.0) < 1e-16);
    CHECK(std::abs(a.c_gn_plus1 - (-0.02 * 2.0 * (1 - 4 * 0.01) * (std::polar(1.0, -3.0 * t) - 1.0) / -3.0)) < 1e-16);
    CHECK(std::abs(a.c_gn_plus2 - 0.02 * cplx{0, 0.3} * std::sqrt(20.0) * (std::polar(1.0, 7.0 * t) - 1.0) / 7.0) < 1e-16);

    double peak = 0.0;
    for (double s : uniform_grid(2.0, 20001)) {
        peak = std::max(peak, std::abs(first_order_amplitudes(3, cfg, c, s).c_gn_minus1));
    }
    CHECK(peak == doctest::Approx(2 * 0.02 * std::sqrt(3.0) / 23.0).epsilon(1e-6));

    const GupCoefficients other = GupCoefficients::synthetic(0.05, 0.0, 0.9, 10.0);
    CHECK(first_order_amplitudes(3, cfg, other, t).c_gn_minus1 == a.c_gn_minus1);
}

TEST_CASE("singular denominators") {
    const GupCoefficients c{};
    CHECK_THROWS_AS(first_order_amplitudes(1, InteractionConfig(5.0, 5.0, 0.1), c, 1.0), SingularDenominatorError);
    CHECK_THROWS_AS(first_order_amplitudes(1, InteractionConfig(5.0, 10.0, 0.1), c, 1.0), SingularDenominatorError);
    CHECK_THROWS_AS(time_averaged_magnitudes(1, InteractionConfig(5.0, 10.0, 0.1), c), SingularDenominatorError);
    const GupParams p = GupParams::from_gamma(1.0, 1, 1);
    CHECK_THROWS_AS(zeta_lq(5, InteractionConfig(5.0, 5.0, 1.0), p), SingularDenominatorError);
    CHECK_THROWS_AS(zeta_rq(5, InteractionConfig(5.0, 10.0, 1.0), p), SingularDenominatorError);
}

TEST_CASE("time-averaged magnitudes") {
    const InteractionConfig cfg(1e16, 1e16 + 1e4, 1.0);
    const GupParams p = GupParams::from_gamma(0.5, 1, 1);
    const auto m = time_averaged_magnitudes(50, cfg, derive_coefficients(p, 1e16));
    CHECK(m.m_minus1 == doctest::Approx(std::sqrt(50.0) / (2e16 + 1e4)).epsilon(1e-14));
    CHECK(m.m_plus2 / m.m_plus1_t2 == doctest::Approx(zeta_lq(50, cfg, p)).epsilon(1e-12));
    CHECK(m.m_plus2 / m.m_plus1_t2 == doctest::Approx(4e-4).epsilon(0.2));

    const auto zero = time_averaged_magnitudes(50, cfg, GupCoefficients{});
    CHECK(zero.m_plus1_t2 == 0.0);
    CHECK(zero.m_plus2 == 0.0);
    CHECK(zero.m_minus1 == m.m_minus1);

    const GupParams q = GupParams::from_gamma(5e3, 1, 1);
    const auto mq = time_averaged_magnitudes(50, cfg, derive_coefficients(q, 1e16));
    CHECK(mq.m_minus1 / mq.m_plus1_t2 == doctest::Approx(zeta_rq(50, cfg, q)).epsilon(1e-12));
}

TEST_CASE("zeta ratios match the time-averaged magnitudes across parameters") {
    for (double omega : {1e9, 3e12, 1e17}) {
        for (double detuning : {1e3, 4e4, -2e4}) {
            const InteractionConfig cfg(omega, omega + detuning, 1.0);
            for (const GupParams& p : {GupParams::from_gamma(0.5, 1, 1), GupParams::from_gamma(30, 0.7, 0.2)}) {
                const auto m = time_averaged_magnitudes(12, cfg, derive_coefficients(p, omega));
                CHECK(m.m_plus2 / m.m_plus1_t2 == doctest::Approx(zeta_lq(12, cfg, p)).epsilon(1e-12));
                CHECK(m.m_minus1 / m.m_plus1_t2 == doctest::Approx(zeta_rq(12, cfg, p)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("zeta spot values and scaling") {
    const InteractionConfig cfg(1e16, 1e16 + 1e4, 1.0);
    const double lq = zeta_lq(50, cfg, GupParams::from_gamma(0.5, 1, 1));
    CHECK(lq == doctest::Approx(4e-4).epsilon(0.2));
    CHECK(lq == doctest::Approx(std::sqrt(104.0) / 51 / (0.5 * std::sqrt(1.054571817e-34 * 1e16)) * 1e4 / (1e16 - 1e4)).epsilon(1e-12));
    const double rq = zeta_rq(50, cfg, GupParams::from_gamma(5e3, 1, 1));
    CHECK(rq == doctest::Approx(4e-4).epsilon(0.2));

    CHECK(zeta_lq(50, cfg, GupParams::from_gamma(1.0, 1, 1)) == doctest::Approx(lq / 2).epsilon(1e-12));
    CHECK(zeta_rq(50, cfg, GupParams::from_gamma(1e4, 1, 1)) == doctest::Approx(rq / 4).epsilon(1e-12));
    CHECK(zeta_lq(50, cfg, GupParams::from_gamma(0.5, 0.0, 1)) == 0.0);
    CHECK(zeta_rq(50, cfg, GupParams::from_gamma(1e-12, 1, 1)) > 1e20);
    CHECK(std::isinf(zeta_rq(50, cfg, GupParams::from_gamma(0.0, 1, 1))));

    CHECK(zeta_lq_signed(50, cfg, GupParams::from_gamma(0.5, 1, 1)) == doctest::Approx(-lq).epsilon(1e-12));
    CHECK(zeta_rq_signed(50, cfg, GupParams::from_gamma(5e3, 1, 1)) == doctest::Approx(-rq).epsilon(1e-12));
    const InteractionConfig red(1e16, 1e16 - 1e4, 1.0);
    CHECK(zeta_lq_signed(50, red, GupParams::from_gamma(0.5, 1, 1)) > 0.0);
}

TEST_CASE("degenerate model") {
    const InteractionConfig cfg(1e16, 1e16 + 1e4, 1.0);
    CHECK_THROWS_AS(zeta_lq(50, cfg, GupParams::from_gamma(0.5, 1.0, 1.5)), DegenerateModelError);
    CHECK_THROWS_AS(zeta_rq(50, cfg, GupParams::from_gamma(0.5, 1.0, 1.5)), DegenerateModelError);
    ZetaMapSpec spec = ZetaMapSpec::fig2();
    spec.params = GupParams::from_gamma(0.5, 1.0, 1.5);
    CHECK_THROWS_AS(zeta_map(spec), DegenerateModelError);
}

TEST_CASE("figure maps") {
    const ZetaMap fig2 = zeta_map(ZetaMapSpec::fig2());
    const ZetaMap fig3 = zeta_map(ZetaMapSpec::fig3());
    CHECK(fig2.omega_axis.size() == 81);
    CHECK(fig2.delta_axis.size() == 41);
    CHECK(fig2.omega_axis.front() == 1e9);
    CHECK(fig2.omega_axis.back() == 1e17);
    CHECK(fig2.delta_axis.front() == 1e3);
    CHECK(fig2.delta_axis.back() == 1e5);

    const auto col = std::find(fig2.omega_axis.begin(), fig2.omega_axis.end(), 1e16) - fig2.omega_axis.begin();
    REQUIRE(col < static_cast<long>(fig2.omega_axis.size()));
    CHECK(fig2.zeta_lq.col(col).maxCoeff() < 1.0);
    CHECK(fig3.zeta_rq.col(col).maxCoeff() < 1.0);

    for (const ZetaMap* map : {&fig2, &fig3}) {
        CHECK(map->zeta_lq.minCoeff() > 0.0);
        CHECK(map->zeta_rq.minCoeff() > 0.0);
        CHECK(map->zeta_lq.allFinite());
        CHECK(map->zeta_rq.allFinite());
        // Both ratios fall with omega at fixed detuning (omega > detuning on this grid).
        for (Eigen::Index r = 0; r < map->zeta_lq.rows(); ++r) {
            for (Eigen::Index k = 1; k < map->zeta_lq.cols(); ++k) {
                CHECK(map->zeta_lq(r, k) < map->zeta_lq(r, k - 1));
                CHECK(map->zeta_rq(r, k) < map->zeta_rq(r, k - 1));
            }
        }
    }
    const InteractionConfig spot(fig2.omega_axis[5], fig2.omega_axis[5] + fig2.delta_axis[7], 1.0);
    CHECK(fig2.zeta_lq(7, 5) == doctest::Approx(zeta_lq(50, spot, fig2.params)).epsilon(1e-15));
}

TEST_CASE("linear GUP is negligible on the fig2 slice once gamma reaches 0.1") {
    for (double detuning : log_axis(1e3, 1e5, 21)) {
        const InteractionConfig cfg(1e16, 1e16 + detuning, 1.0);
        const GupParams p = GupParams::from_gamma(0.1, 1, 1);
        CHECK(zeta_lq(50, cfg, p) < 1.0);
        CHECK(zeta_lq_unit_gamma(50, cfg, p) < 0.1);
        CHECK(zeta_lq(50, cfg, GupParams::from_gamma(zeta_lq_unit_gamma(50, cfg, p), 1, 1)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("log axis") {
    const auto axis = log_axis(1e3, 1e5, 3);
    CHECK(axis[1] == doctest::Approx(1e4).epsilon(1e-14));
    CHECK_THROWS_AS(log_axis(0.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_axis(1.0, 10.0, 1), std::invalid_argument);
}

TEST_CASE("perturbation cross-check") {
    const auto t = uniform_grid(10.0, 201);
    const GupCoefficients c = GupCoefficients::synthetic(0.05, 0.0, 0.1, 10.0);

    const auto none = perturbation_cross_check(2, InteractionConfig(10.0, 12.0, 0.0), c, t, 6);
    CHECK(none.max_rel_err == 0.0);
    for (const auto& a : none.numeric) {
        CHECK(a.c_gn_minus1 == cplx{});
        CHECK(a.c_gn_plus2 == cplx{});
    }

    std::vector<double> rel;
    for (double lambda : {1e-3, 5e-4, 2.5e-4, 1.25e-4}) {
        const auto r = perturbation_cross_check(2, InteractionConfig(10.0, 12.0, lambda), c, t, 6);
        CHECK(r.integration_error < 1e-10);
        rel.push_back(r.max_rel_err);
    }
    CHECK(rel.front() < 1e-4);
    CHECK(oracle::mean_halving_slope(rel) == doctest::Approx(2.0).epsilon(0.05));

    const auto jcm = perturbation_cross_check(3, InteractionConfig(10.0, 12.0, 1e-3), GupCoefficients{}, t, 7);
    CHECK(jcm.channel_rel_err[0] < 1e-4);
    CHECK(jcm.channel_rel_err[2] == 0.0);

    CHECK_THROWS_AS(perturbation_cross_check(2, InteractionConfig(10.0, 12.0, 0.1), c, t, 6), std::invalid_argument);
    CHECK_THROWS_AS(perturbation_cross_check(2, InteractionConfig(10.0, 12.0, 1e-4), c, t, 4), std::invalid_argument);
}

TEST_CASE("GUP channels scale with gamma") {
    const InteractionConfig cfg(1e15, 1e15 + 3e4, 1.0);
    const double t = 2e-5;
    const auto base = first_order_amplitudes(4, cfg, GupCoefficients{}, t);
    const auto a1 = first_order_amplitudes(4, cfg, derive_coefficients(GupParams::from_gamma(1e5, 1, 0.3), 1e15), t);
    const auto a2 = first_order_amplitudes(4, cfg, derive_coefficients(GupParams::from_gamma(2e5, 1, 0.3), 1e15), t);
    CHECK(std::abs(a2.c_gn_plus2 / a1.c_gn_plus2 - 2.0) < 1e-12);
    CHECK(std::abs((a2.c_gn_plus1 - base.c_gn_plus1) / (a1.c_gn_plus1 - base.c_gn_plus1) - 4.0) < 1e-6);
}

}
