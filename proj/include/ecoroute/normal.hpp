#pragma once

namespace ecoroute {

double normal_pdf(double x);
double normal_cdf(double x);
/// Upper tail 1 - Phi(x), without cancellation for large x.
double normal_sf(double x);
/// Scaled complementary error function exp(x^2) erfc(x), finite for large x.
double erfcx(double x);

}  // namespace ecoroute
