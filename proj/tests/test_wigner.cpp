#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gupjc/dispersive.hpp"
#include "gupjc/errors.hpp"
#include "gupjc/wigner.hpp"
#include "oracles.hpp"

using namespace gupjc;
using std::numbers::pi;

TEST_SUITE("wigner") {

TEST_CASE("point values") {
    CHECK(wigner_at(FockVector::basis(0, 4), 0.0) == doctest::Approx(2 / pi).epsilon(1e-12));
    CHECK(wigner_at(FockVector::basis(1, 4), 0.0) == doctest::Approx(-2 / pi).epsilon(1e-12));
    const FockVector c = coherent_state(1.0, 30);
    CHECK(wigner_at(c, 1.0) == doctest::Approx(2 / pi).epsilon(1e-10));
    CHECK(wigner_at(c, 0.0) == doctest::Approx(2 / pi * std::exp(-2.0)).epsilon(1e-10));
}

TEST_CASE("closed forms on a grid") {
    const GridSpec grid = GridSpec::square(4.0, 41);
    const cplx alpha{0.8, -0.6};
    const WignerGrid wc = wigner_of_state(coherent_state(alpha, 30), grid);
    double worst = 0.0;
    for (std::size_t iy = 0; iy < wc.im_axis.size(); ++iy) {
        for (std::size_t ix = 0; ix < wc.re_axis.size(); ++ix) {
            const cplx z{wc.re_axis[ix], wc.im_axis[iy]};
            worst = std::max(worst, std::abs(wc.values(iy, ix) - oracle::wigner_coherent(z, alpha)));
        }
    }
    CHECK(worst < 1e-8);

    for (int n = 0; n <= 5; ++n) {
        const WignerGrid wf = wigner_of_state(FockVector::basis(n, n + 2), grid);
        double err = 0.0;
        for (std::size_t iy = 0; iy < wf.im_axis.size(); ++iy) {
            for (std::size_t ix = 0; ix < wf.re_axis.size(); ++ix) {
                const cplx z{wf.re_axis[ix], wf.im_axis[iy]};
                err = std::max(err, std::abs(wf.values(iy, ix) - oracle::wigner_fock(n, z)));
            }
        }
        CHECK(err < 1e-8);
    }
}

TEST_CASE("normalization") {
    const GridSpec grid = GridSpec::square(6.0, 121);
    CHECK(wigner_of_state(FockVector::basis(0, 3), grid).integral() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(wigner_of_state(FockVector::basis(1, 3), grid).integral() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(wigner_of_state(FockVector::basis(2, 4), grid).integral() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(wigner_of_state(coherent_state(1.0, 30), grid).integral() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(wigner_of_state(photon_added_coherent_state(1.0, 1, 30), grid).integral() ==
          doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("photon-added coherent state is nonclassical") {
    for (double a : {0.3, 0.6, 1.0}) {
        const WignerGrid w = wigner_of_state(photon_added_coherent_state(a, 1, 30), GridSpec::square(4.0, 81));
        CHECK(w.values.minCoeff() < 0.0);
    }
    const WignerGrid coh = wigner_of_state(coherent_state(1.0, 30), GridSpec::square(4.0, 41));
    CHECK(coh.values.minCoeff() > -1e-12);
}

TEST_CASE("difference against itself vanishes") {
    const cplx alpha{0.5, 0.7};
    const WignerDifference d = wigner_difference(coherent_state(alpha, 30), alpha, GridSpec::square(4.0, 41));
    CHECK(d.max_abs < 1e-10);
    CHECK(d.reference_peak == doctest::Approx(2 / pi).epsilon(2e-2));
}

TEST_CASE("dispersive difference is linear in t") {
    const GupCoefficients c = derive_coefficients(GupParams::from_gamma(1e3, 1, 1), 1e15);
    const GridSpec grid = GridSpec::square(4.0, 61);
    double previous = 0.0;
    for (double t : {1e3, 2e3}) {
        const DispersiveConfig d{1e5, c.phi, 1.0, t, 30};
        const AtomFieldState psi = evolve_dispersive_exact(d, Atom::ground);
        const double max_abs = wigner_difference(FockVector(psi.amps_g), std::polar(1.0, 1e5 * t), grid).max_abs;
        if (previous > 0.0) {
            CHECK(max_abs / previous == doctest::Approx(2.0).epsilon(0.1));
        }
        previous = max_abs;
    }
}

TEST_CASE("padding guard") {
    const WignerEvaluator tight(10, 4.0, 0);
    CHECK_THROWS_AS(tight(coherent_state(1.0, 10, 1e-6), cplx{3.5, 0.0}), TruncationError);
    const WignerEvaluator roomy(10, 4.0);
    CHECK_NOTHROW(roomy(coherent_state(1.0, 10, 1e-6), cplx{3.5, 0.0}));
    CHECK(roomy.padded_ncut() >= 10 + 2 * 16 + 10);
    CHECK_THROWS_AS(roomy(coherent_state(1.0, 10, 1e-6), cplx{4.0, 4.0}), std::invalid_argument);
}

TEST_CASE("precision ratio") {
    CHECK(wigner_precision_ratio(1e-4, 1e-1) == doctest::Approx(1e-3));
    CHECK(wigner_precision_ratio(0.0, 0.3) == 0.0);
    CHECK(wigner_precision_ratio(4e-4, 0.2) == doctest::Approx(2 * wigner_precision_ratio(2e-4, 0.2)));
    CHECK_THROWS_AS(wigner_precision_ratio(1e-4, 0.0), std::invalid_argument);
}

TEST_CASE("grid spec") {
    const GridSpec g;
    CHECK(g.re_axis().size() == 201);
    CHECK(g.re_axis().front() == -4.0);
    CHECK(g.re_axis()[100] == doctest::Approx(0.0));
    CHECK(g.max_abs() == doctest::Approx(4 * std::sqrt(2.0)));
    CHECK_THROWS_AS(GridSpec::square(1.0, 1).re_axis(), std::invalid_argument);
}

}
