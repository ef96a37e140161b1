#pragma once

// Closed-form deficit analytics for a battery level approximated by Brownian
// motion with drift: deficit distribution and mean, large-horizon regimes,
// and the normalized deviation from drift-only scaling.

#include "ecoroute/core.hpp"

namespace ecoroute {

struct DriftSpec {
    double mu = 0.0;     // J / slot
    double sigma = 1.0;  // J / sqrt(slot), > 0
};

/// Mean and variance rate of the lumped myopic battery increment.
struct MyopicMoments {
    double drift = 0.0;     // harvest mean minus lower-bound consumption rate
    double variance = 0.0;  // harvest variance plus rate * E[E_LB^2]

    DriftSpec as_drift() const;
};

MyopicMoments myopic_moments(const SystemConfig& config);

/// P(D_T <= z) for the deficit of drifted Brownian motion started at zero.
/// Returns 0 for z < 0.
double deficit_cdf(double z, const DriftSpec& drift, double horizon);

/// E[D_T]; switches to sigma*sqrt(2T/pi) when |mu| sqrt(T)/sigma < 1e-6.
double expected_deficit(const DriftSpec& drift, double horizon);

enum class DriftRegime { deficit, critical, surplus };

/// Large-horizon limit of E[D_T] for the drift's sign.
double regime_asymptote(const DriftSpec& drift, double horizon);
DriftRegime regime_of(const DriftSpec& drift);

struct Deviation {
    double kappa = 0.0;      // mu T / (sigma sqrt(2T/pi))
    double deviation = 0.0;  // (E[D_T] - (-mu)^+ T) / (sigma sqrt(2T/pi))
};

Deviation deviation_curve(const DriftSpec& drift, double horizon);

/// Drift producing a given kappa at (sigma, horizon).
double drift_for_kappa(double kappa, double sigma, double horizon);

}  // namespace ecoroute
