#pragma once

// Battery recursions: the unconstrained path, the minimally topped-up path,
// and the deficit (cumulative auxiliary energy).

#include <span>
#include <vector>

namespace ecoroute {

struct BatteryTrace {
    std::vector<double> uncontrolled;  // B_0..B_T, may go negative
    std::vector<double> controlled;    // topped-up path, never negative
    std::vector<double> injections;    // G_0..G_{T-1}
    double deficit = 0.0;              // sum of injections
};

/// B_{t+1} = B_t + R_t - C_t starting from `initial`.
std::vector<double> uncontrolled_path(std::span<const double> harvest, std::span<const double> consumption,
                                      double initial);

struct ControlledPath {
    std::vector<double> battery;     // length T+1
    std::vector<double> injections;  // length T
};

/// Injects the least energy that keeps the battery nonnegative each slot.
ControlledPath greedy_controlled(std::span<const double> harvest, std::span<const double> consumption,
                                 double initial);

/// Positive part of minus the running minimum of a battery path.
double deficit(std::span<const double> battery);

/// Running deficit D_0..D_T of a battery path.
std::vector<double> running_deficit(std::span<const double> battery);

/// All three recursions over one (harvest, consumption) pair.
BatteryTrace simulate_battery(std::span<const double> harvest, std::span<const double> consumption,
                              double initial);

}  // namespace ecoroute
