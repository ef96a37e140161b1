#include "ecoroute/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ecoroute/dispatch.hpp"
#include "ecoroute/normal.hpp"

namespace ecoroute {

namespace {

void check(const DriftSpec& drift, double horizon) {
    if (!(drift.sigma > 0.0)) throw DomainError("diffusion: sigma must be > 0");
    if (!(horizon > 0.0)) throw DomainError("diffusion: horizon must be > 0");
}

double zero_drift_scale(double sigma, double horizon) { return sigma * std::sqrt(2.0 * horizon / std::numbers::pi); }

}  // namespace

DriftSpec MyopicMoments::as_drift() const { return {drift, std::sqrt(variance)}; }

MyopicMoments myopic_moments(const SystemConfig& config) {
    const LowerBoundMoments lb = lower_bound_moments(config.arrivals, config);
    MyopicMoments m;
    m.drift = config.harvest.mean - lb.mean_rate;
    m.variance = (config.harvest.kind == HarvestKind::gamma ? config.harvest.variance : 0.0) + lb.second_rate;
    return m;
}

double deficit_cdf(double z, const DriftSpec& drift, double horizon) {
    check(drift, horizon);
    if (z < 0.0) return 0.0;
    if (std::isinf(z)) return 1.0;
    const double mu = drift.mu, s2 = drift.sigma * drift.sigma;
    const double scale = drift.sigma * std::sqrt(horizon);
    const double exponent = -2.0 * mu * z / s2;
    const double w = (z - mu * horizon) / scale;  // second term is exp(exponent) * Phi(-w)

    double reflected;
    if (exponent > 30.0 && w > 0.0) {
        // exp(exponent - w^2/2) collapses to exp(-(z + mu T)^2 / (2 sigma^2 T)).
        const double u = (z + mu * horizon) / scale;
        reflected = 0.5 * erfcx(w / std::numbers::sqrt2) * std::exp(-0.5 * u * u);
    } else {
        reflected = std::exp(exponent) * normal_sf(w);
    }
    const double p = normal_cdf((z + mu * horizon) / scale) - reflected;
    return std::min(1.0, std::max(0.0, p));
}

double expected_deficit(const DriftSpec& drift, double horizon) {
    check(drift, horizon);
    const double root_t = std::sqrt(horizon);
    const double a = drift.mu * root_t / drift.sigma;
    if (std::abs(a) < 1e-6) return zero_drift_scale(drift.sigma, horizon);
    const double bracket = normal_pdf(a) - a * normal_sf(a) + std::erf(a / std::numbers::sqrt2) / (2.0 * a);
    return drift.sigma * root_t * bracket;
}

DriftRegime regime_of(const DriftSpec& drift) {
    if (drift.mu < 0.0) return DriftRegime::deficit;
    if (drift.mu > 0.0) return DriftRegime::surplus;
    return DriftRegime::critical;
}

double regime_asymptote(const DriftSpec& drift, double horizon) {
    check(drift, horizon);
    const double s2 = drift.sigma * drift.sigma;
    switch (regime_of(drift)) {
        case DriftRegime::deficit:
            return -drift.mu * horizon + s2 / (-2.0 * drift.mu);
        case DriftRegime::surplus:
            return s2 / (2.0 * drift.mu);
        case DriftRegime::critical:
            break;
    }
    return zero_drift_scale(drift.sigma, horizon);
}

Deviation deviation_curve(const DriftSpec& drift, double horizon) {
    check(drift, horizon);
    const double scale = zero_drift_scale(drift.sigma, horizon);
    Deviation d;
    d.kappa = drift.mu * horizon / scale;
    d.deviation = (expected_deficit(drift, horizon) - std::max(0.0, -drift.mu) * horizon) / scale;
    return d;
}

double drift_for_kappa(double kappa, double sigma, double horizon) {
    return kappa * zero_drift_scale(sigma, horizon) / horizon;
}

}  // namespace ecoroute
