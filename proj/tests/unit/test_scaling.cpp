#include <doctest.h>

#include <cmath>

#include "ecoroute/scaling.hpp"
#include "ecoroute/verify.hpp"
#include "support.hpp"

using namespace ecoroute;

namespace {

// I_x(a,b) for integer a,b: P(Binomial(a+b-1, x) >= a), summed in long double.
double binomial_tail(double x, int a, int b) {
    const int n = a + b - 1;
    long double sum = 0.0L;
    for (int j = a; j <= n; ++j) {
        long double c = 1.0L;
        for (int i = 1; i <= j; ++i) c = c * (n - j + i) / i;
        sum += c * std::pow(static_cast<long double>(x), j) * std::pow(1.0L - x, n - j);
    }
    return static_cast<double>(sum);
}

CapabilityParams params_for(double level, std::size_t model) {
    const auto& cfg = reference_config();
    return capability_params({level, 50}, cfg.models[model], cfg.scaling);
}

}  // namespace

TEST_CASE("incomplete beta matches the binomial tail on integer shapes") {
    double worst = 0.0;
    for (int a = 1; a <= 20; ++a)
        for (int b = 1; b <= 20; ++b)
            for (int k = 0; k <= 20; ++k) {
                const double x = 0.05 * k;
                worst = std::max(worst, std::abs(reg_inc_beta(x, a, b) - binomial_tail(x, a, b)));
            }
    CHECK(worst < 1e-12);
}

TEST_CASE("library binomial oracle agrees with the test's own") {
    for (int a : {1, 3, 17})
        for (int b : {2, 9, 20})
            for (double x : {0.05, 0.5, 0.95}) CHECK(binomial_beta_oracle(x, a, b) == doctest::Approx(binomial_tail(x, a, b)).epsilon(1e-13));
}

TEST_CASE("incomplete beta reflection and known values") {
    for (double x : {0.01, 0.3, 0.77})
        for (double a : {0.5, 2.5, 50.0})
            for (double b : {0.7, 3.0, 1e4}) CHECK(reg_inc_beta(x, a, b) + reg_inc_beta(1 - x, b, a) == doctest::Approx(1.0).epsilon(1e-12));
    // I_x(1/2, 1/2) = (2/pi) asin(sqrt x)
    const double pi = 3.14159265358979323846;
    for (double x : {0.1, 0.5, 0.9}) CHECK(reg_inc_beta(x, 0.5, 0.5) == doctest::Approx(2 / pi * std::asin(std::sqrt(x))).epsilon(1e-12));
    // I_x(a, 1) = x^a
    CHECK(reg_inc_beta(0.3, 7.5, 1.0) == doctest::Approx(std::pow(0.3, 7.5)).epsilon(1e-12));
    CHECK(reg_inc_beta(0.0, 2, 3) == 0.0);
    CHECK(reg_inc_beta(1.0, 2, 3) == 1.0);
}

TEST_CASE("compute-optimal loss of the two reference models") {
    const auto& fit = reference_config().scaling;
    const double gamma = 406.4 * (1 + 0.34 / 0.28);
    CHECK(fit.loss_scale == doctest::Approx(gamma).epsilon(1e-12));
    CHECK(chinchilla_loss(1e9, fit) == doctest::Approx(1.69 + gamma * std::pow(1e9, -0.34)).epsilon(1e-12));
    CHECK(capability(chinchilla_loss(1e10, fit), 1e10, fit) == doctest::Approx(0.5));
}

TEST_CASE("minimum token budgets at the catalog endpoints") {
    // brentq on scipy.special.betainc (tests/oracles/gen_oracles.py)
    CHECK(min_token_budget(params_for(1.7, 0), 0.1) == doctest::Approx(57826.84038).epsilon(1e-7));
    CHECK(min_token_budget(params_for(1.7, 1), 0.1) == doctest::Approx(7838.529452).epsilon(1e-7));
    CHECK(min_token_budget(params_for(1.9, 0), 0.1) == doctest::Approx(21956.48609).epsilon(1e-7));
    CHECK(min_token_budget(params_for(1.9, 1), 0.1) == doctest::Approx(3560.405632).epsilon(1e-7));
}

TEST_CASE("budget reaches the tolerance and is tight") {
    const CapabilityParams p = params_for(1.8, 0);
    const double w = min_token_budget(p, 0.1);
    CHECK(success_prob(p, w) >= 0.9);
    CHECK(success_prob(p, w * (1 - 1e-6)) < 0.9);
}

TEST_CASE("budgets grow with difficulty and shrink with tolerance") {
    CHECK(min_token_budget(params_for(1.7, 0), 0.1) > min_token_budget(params_for(1.8, 0), 0.1));
    CHECK(min_token_budget(params_for(1.8, 0), 0.01) > min_token_budget(params_for(1.8, 0), 0.1));
}

TEST_CASE("success probability below m skills' worth of tokens is zero") {
    const CapabilityParams p = params_for(1.8, 1);
    CHECK(success_prob(p, 20.0 * 49) == 0.0);
    CHECK(success_prob(p, 20.0 * 50) > 0.0);
}

TEST_CASE("unreachable tolerance is infeasible") {
    CapabilityParams p = params_for(1.8, 0);
    p.success_rate = 0.0;
    CHECK_THROWS_AS(min_token_budget(p, 0.1), InfeasibleTask);
    p.success_rate = 1e-9;
    CHECK_THROWS_AS(min_token_budget(p, 0.1), InfeasibleTask);
}
