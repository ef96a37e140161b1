#pragma once

// Feasibility, minimum-energy routing, noisy routing, and the two myopic
// consumption processes (charge at arrival vs. spread over service).

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ecoroute/arrivals.hpp"
#include "ecoroute/core.hpp"
#include "ecoroute/energetics.hpp"
#include "ecoroute/rng.hpp"

namespace ecoroute {

/// Minimum-budget service of one task on one model.
struct ServiceQuote {
    std::size_t model = 0;
    bool capable = false;  // false when the tolerance is unreachable on this model
    double tokens = 0.0;
    Slot slots = 0;
    double energy = 0.0;
    std::shared_ptr<const ExpenditureProfile> profile;
};

struct Allocation {
    TaskInstance task;
    std::size_t model = 0;
    double tokens = 0.0;
    Slot slots = 0;
    double energy = 0.0;    // J for the task itself
    double excess = 0.0;    // energy above the arrival-feasible lower bound
    double overhead = 0.0;  // dispatcher self-energy charged in the dispatch slot
    bool misrouted = false;
    std::shared_ptr<const ExpenditureProfile> profile;
};

struct ConsumptionSeries {
    std::vector<double> per_slot;
};

/// (tokens, slots, energy) at the smallest token budget meeting the task's tolerance.
/// Throws InfeasibleTask when the model cannot reach the tolerance.
ServiceQuote min_service_time(const TaskInstance& task, std::size_t model, const SystemConfig& config);

/// Remaining slack of `task` at slot `now`, after dispatcher latency.
Slot slack(const TaskInstance& task, Slot now, const SystemConfig& config);

std::vector<std::size_t> feasible_set(const TaskInstance& task, Slot now, const SystemConfig& config);
Allocation route_lb(const TaskInstance& task, Slot now, const SystemConfig& config);
Allocation route_noisy(const TaskInstance& task, Slot now, const SystemConfig& config, Rng& rng);

/// Deadline assigned to catalog entries that do not state one: twice the
/// slowest model's minimum service time.
Slot default_deadline(const TaskDescriptor& descriptor, double tolerance, const SystemConfig& config);

/// Routing with quotes for every catalog entry computed once up front.
/// Immutable after construction; safe to share across threads.
class Router {
public:
    explicit Router(SystemConfig config);

    const SystemConfig& config() const { return config_; }
    std::span<const ServiceQuote> quotes(std::size_t catalog_index) const { return quotes_[catalog_index]; }

    std::vector<std::size_t> feasible_set(const TaskInstance& task, Slot now) const;
    Allocation route_lb(const TaskInstance& task, Slot now) const;
    /// With probability `error` picks uniformly among feasible models other
    /// than the minimum-energy one; otherwise routes like route_lb.
    Allocation route_noisy(const TaskInstance& task, Slot now, double error, Rng& rng) const;

    /// Minimum arrival-feasible energy of a catalog entry.
    double lower_bound_energy(std::size_t catalog_index) const;

private:
    SystemConfig config_;
    std::vector<std::vector<ServiceQuote>> quotes_;
};

using RouteFn = std::function<Allocation(const TaskInstance&, Slot now)>;

/// Routes every arrival at its arrival slot, in slot order.
std::vector<Allocation> route_arrivals(const ArrivalStream& arrivals, const ArrivalModel& catalog,
                                       const RouteFn& route);

/// Charges each allocation's full energy (plus dispatcher overhead) in its dispatch slot.
ConsumptionSeries lumped_consumption(std::span<const Allocation> allocations, Slot horizon);
/// Spreads each allocation's per-slot profile over its service interval; the
/// dispatcher overhead is charged in the dispatch slot and service starts
/// after the dispatcher latency. Energy past the horizon is dropped.
ConsumptionSeries distributed_consumption(std::span<const Allocation> allocations, Slot horizon,
                                          Slot dispatcher_latency = 0);

ConsumptionSeries lumped_consumption(const ArrivalStream& arrivals, const RouteFn& route,
                                     const SystemConfig& config);
ConsumptionSeries distributed_consumption(const ArrivalStream& arrivals, const RouteFn& route,
                                          const SystemConfig& config);

/// Arrival rate times the first and second moments of the lower-bound energy.
struct LowerBoundMoments {
    double mean_rate = 0.0;    // J / slot
    double second_rate = 0.0;  // J^2 / slot
};

LowerBoundMoments lower_bound_moments(const ArrivalModel& arrivals, const SystemConfig& config);
double cbar_lb(const ArrivalModel& arrivals, const SystemConfig& config);

}  // namespace ecoroute
