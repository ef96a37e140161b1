#pragma once

#include <vector>

#include "ecoroute/arrivals.hpp"
#include "ecoroute/core.hpp"
#include "ecoroute/rng.hpp"

namespace ecoroute {

/// Poisson(rate) arrivals per slot, each task drawn i.i.d. from the catalog weights.
ArrivalStream sample_arrivals(const ArrivalModel& model, Slot horizon, Rng& rng);

/// I.i.d. harvest per slot; the gamma kind is moment-matched to (mean, variance).
std::vector<double> sample_harvest(const HarvestModel& model, Slot horizon, Rng& rng);

}  // namespace ecoroute
