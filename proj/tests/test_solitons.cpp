#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mcflab/errors.hpp"
#include "mcflab/solitons.hpp"

using namespace mcflab;

TEST_CASE("bowl translator satisfies its equation on the flow stencils") {
    SolitonProfile g1 = translator_profile(1.0, 2, 20.0, 0.05);
    CHECK(g1.kind == SolitonKind::translator);
    CHECK(g1.profile.u[0] == 0.0);
    CHECK(g1.residual_max < 2e-8);  // measured 7.157e-9

    // second-order stencil residual and its contraction under refinement
    const double res = translation_residual(g1.profile, 1.0);
    CHECK(res < 1.5e-4);  // measured 1.171347e-4
    SolitonProfile g1f = translator_profile(1.0, 2, 20.0, 0.025);
    const double resf = translation_residual(g1f.profile, 1.0);
    CHECK(res / resf > 3.5);  // measured ratio 3.999
    CHECK(res / resf < 4.5);

    // a wrong speed leaves an O(1) residual
    CHECK(translation_residual(g1.profile, 2.0) > 0.9);

    // series start: u ~ N/(2n) r^2 near the axis
    const double h = g1.profile.grid.h;
    CHECK(g1.profile.u[1] / (h * h) == doctest::Approx(0.25).epsilon(1e-4));

    // outer slope approaches the cone of the level-set far field
    CHECK(g1.asymptotic_slope_ratio ==
          doctest::Approx(0.9966419494044773).epsilon(1e-9));
}

TEST_CASE("translator family closes under parabolic rescaling") {
    // g_N(r) = g_1(N r)/N; N = 2 halves the domain and doubles the grid step
    // on the reference, so the two integrations see identical arithmetic
    SolitonProfile g2 = translator_profile(2.0, 2, 10.0, 0.05);
    SolitonProfile g1 = translator_profile(1.0, 2, 20.0, 0.1);
    REQUIRE(g2.profile.grid.size() == g1.profile.grid.size());
    double worst = 0.0;
    for (int i = 0; i < g2.profile.grid.size(); ++i)
        worst = std::max(worst, std::abs(g2.profile.u[i] - g1.profile.u[i] / 2.0));
    CHECK(worst < 1e-10);  // measured exactly zero
}

TEST_CASE("expander shoots onto the prescribed cone") {
    SolitonProfile E = expander_profile(1.0, 2, 1.0, 30.0, 0.05);
    CHECK(E.kind == SolitonKind::expander);
    CHECK(E.residual_max < 2e-8);  // measured 9.522e-9
    CHECK(E.profile.u[0] == doctest::Approx(1.209148026325825).epsilon(1e-9));
    CHECK(expander_residual(E.profile, 1.0) < 5e-4);  // measured 3.133e-4
    CHECK(std::abs(E.asymptotic_slope_ratio - 1.0) < 1e-3);

    // axis curvature balances the self-similar term: u''(0) = c u(0)/n
    const double h = E.profile.grid.h;
    const double d2u0 = 2.0 * (E.profile.u[1] - E.profile.u[0]) / (h * h);
    CHECK(d2u0 == doctest::Approx(E.profile.u[0] / 2.0).epsilon(1e-3));
}

TEST_CASE("expander family closes under parabolic rescaling") {
    // E_c(r) = E_1(sqrt(c) r)/sqrt(c); c = 4 doubles the slope, so the
    // 6th-order certification loosens by about 2^7
    SolitonProfile E1 = expander_profile(1.0, 2, 1.0, 30.0, 0.05);
    SolitonProfile E4 = expander_profile(4.0, 2, 1.0, 15.0, 0.05, 1e-5);
    CHECK(std::abs(E4.profile.u[0] - E1.profile.u[0] / 2.0) < 1e-6);
}

TEST_CASE("soliton construction rejects bad parameters") {
    CHECK_THROWS_AS(translator_profile(0.0, 2, 20.0, 0.05), ConfigError);
    CHECK_THROWS_AS(translator_profile(-1.0, 2, 20.0, 0.05), ConfigError);
    CHECK_THROWS_AS(expander_profile(0.0, 2, 1.0, 30.0, 0.05), ConfigError);
    CHECK_THROWS_AS(expander_profile(1.0, 2, 0.0, 30.0, 0.05), ConfigError);
    // an impossible certification tolerance must fail loudly
    CHECK_THROWS_AS(translator_profile(1.0, 2, 20.0, 0.05, 1e-12), CheckFailure);
    // an unreachable cone slope exhausts the bisection bracket
    CHECK_THROWS_AS(expander_profile(1.0, 2, 1e9, 30.0, 0.05), NumericalError);
}

TEST_CASE("soliton kind labels") {
    CHECK(to_string(SolitonKind::translator) == "translator");
    CHECK(to_string(SolitonKind::expander) == "expander");
}
