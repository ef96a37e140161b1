#include "ecoroute/battery.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ecoroute/error.hpp"

namespace ecoroute {

namespace {

void require_same_length(std::span<const double> harvest, std::span<const double> consumption) {
    if (harvest.size() != consumption.size())
        throw DomainError("battery: harvest and consumption lengths differ (" + std::to_string(harvest.size()) +
                          " vs " + std::to_string(consumption.size()) + ")");
}

}  // namespace

std::vector<double> uncontrolled_path(std::span<const double> harvest, std::span<const double> consumption,
                                      double initial) {
    require_same_length(harvest, consumption);
    std::vector<double> b(harvest.size() + 1);
    b[0] = initial;
    for (std::size_t t = 0; t < harvest.size(); ++t) b[t + 1] = b[t] + harvest[t] - consumption[t];
    return b;
}

ControlledPath greedy_controlled(std::span<const double> harvest, std::span<const double> consumption,
                                 double initial) {
    require_same_length(harvest, consumption);
    ControlledPath out;
    out.battery.resize(harvest.size() + 1);
    out.injections.resize(harvest.size());
    out.battery[0] = initial;
    for (std::size_t t = 0; t < harvest.size(); ++t) {
        const double next = out.battery[t] + harvest[t] - consumption[t];
        const double g = std::max(0.0, -next);
        out.injections[t] = g;
        out.battery[t + 1] = g > 0.0 ? 0.0 : next;
    }
    return out;
}

double deficit(std::span<const double> battery) {
    if (battery.empty()) throw DomainError("deficit: empty battery path");
    return std::max(0.0, -*std::min_element(battery.begin(), battery.end()));
}

std::vector<double> running_deficit(std::span<const double> battery) {
    std::vector<double> d(battery.size());
    double low = 0.0;
    for (std::size_t t = 0; t < battery.size(); ++t) {
        low = std::min(low, battery[t]);
        d[t] = -low;
    }
    return d;
}

BatteryTrace simulate_battery(std::span<const double> harvest, std::span<const double> consumption,
                              double initial) {
    BatteryTrace trace;
    trace.uncontrolled = uncontrolled_path(harvest, consumption, initial);
    auto controlled = greedy_controlled(harvest, consumption, initial);
    trace.controlled = std::move(controlled.battery);
    trace.injections = std::move(controlled.injections);
    trace.deficit = std::accumulate(trace.injections.begin(), trace.injections.end(), 0.0);
    return trace;
}

}  // namespace ecoroute
