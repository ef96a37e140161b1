#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ecoroute/error.hpp"
#include "ecoroute/regime.hpp"
#include "ecoroute/rng.hpp"

using namespace ecoroute;

namespace {

std::vector<double> geometric(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(std::round(lo * std::pow(hi / lo, i / (n - 1.0))));
    return out;
}

}  // namespace

TEST_CASE("line fit recovers an exact line") {
    const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
    const LineFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.sse == doctest::Approx(0.0).scale(1));
    CHECK_THROWS_AS(fit_line(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3}), DomainError);
}

TEST_CASE("pure square-root data is not segmented") {
    const auto t = geometric(100, 1e4, 40);
    std::vector<double> d;
    Rng rng = make_stream(3, 0);
    for (double x : t) d.push_back(3.0 * std::sqrt(x) + 0.01 * (uniform01(rng) - 0.5));
    const auto r = detect_regime(t, d);
    CHECK(r.verdict == RegimeVerdict::pure_sqrt);
    CHECK_FALSE(r.breakpoint.has_value());
    CHECK(r.pure.slope == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("fluctuation-then-drift curve is segmented near the crossing") {
    const double mu = -0.05, sigma = 1.0;
    const double crossing = 2 * sigma * sigma / (std::numbers::pi * mu * mu);  // ~254.6
    CHECK(crossing == doctest::Approx(254.6479).epsilon(1e-6));
    const auto t = geometric(10, 1e4, 40);
    std::vector<double> d;
    for (double x : t) d.push_back(x < crossing ? sigma * std::sqrt(2 * x / std::numbers::pi) : -mu * x);
    const auto r = detect_regime(t, d);
    REQUIRE(r.verdict == RegimeVerdict::segmented);
    CHECK(*r.breakpoint > crossing / 2);
    CHECK(*r.breakpoint < crossing * 2);
}

TEST_CASE("candidates run from the third to the (n-3)rd distinct horizon") {
    const std::vector<double> t{5, 1, 2, 2, 3, 4, 6, 7, 8, 9};
    CHECK(default_candidates(t) == std::vector<double>{3, 4, 5, 6});
}

TEST_CASE("too few horizons is an error") {
    const std::vector<double> t{1, 2, 3, 4, 5, 6, 7}, d{1, 2, 3, 4, 5, 6, 7};
    CHECK_THROWS_AS(detect_regime(t, d), DomainError);
}

TEST_CASE("repeated horizons count as observations, not grid points") {
    std::vector<double> t, d;
    for (double x : geometric(100, 1e4, 10))
        for (int k = 0; k < 5; ++k) {
            t.push_back(x);
            d.push_back(2 * std::sqrt(x) + k);
        }
    const auto r = detect_regime(t, d);
    CHECK(r.observations == 50u);
    CHECK(r.verdict == RegimeVerdict::pure_sqrt);
}

TEST_CASE("bic penalty weight controls acceptance") {
    // a slight kink that a huge penalty refuses and no penalty accepts
    const auto t = geometric(100, 1e4, 30);
    std::vector<double> d;
    for (double x : t) d.push_back(x < 2000 ? std::sqrt(x) : std::sqrt(x) + 0.002 * (x - 2000));
    CHECK(detect_regime(t, d, 1e6).verdict == RegimeVerdict::pure_sqrt);
    CHECK(detect_regime(t, d, 0.0).verdict == RegimeVerdict::segmented);
}
