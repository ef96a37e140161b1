#include "ecoroute/normal.hpp"

#include <cmath>
#include <numbers>

namespace ecoroute {

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double erfcx(double x) {
    if (x < 5.0) {
        if (x < -26.0) return HUGE_VAL;
        return std::exp(x * x) * std::erfc(x);
    }
    // Laplace continued fraction, evaluated bottom-up; 60 terms is exact to
    // double precision for x >= 5.
    double k = x;
    for (int n = 60; n >= 1; --n) k = x + 0.5 * n / k;
    return 1.0 / (std::sqrt(std::numbers::pi) * k);
}

}  // namespace ecoroute
