#include "ecoroute/dispatch.hpp"

#include <algorithm>
#include <sstream>

#include "ecoroute/scaling.hpp"

namespace ecoroute {

namespace {

std::string describe(const TaskInstance& task) {
    std::ostringstream os;
    os << "task(l=" << task.descriptor.difficulty << ", m=" << task.descriptor.skills
       << ", deadline=" << task.requirement.deadline << ", tolerance=" << task.requirement.tolerance
       << ", arrival=" << task.arrival;
    if (task.catalog_index) os << ", catalog=" << *task.catalog_index;
    os << ")";
    return os.str();
}

ServiceQuote make_quote(const TaskInstance& task, std::size_t model, const SystemConfig& config) {
    const ModelProfile& profile = config.models.at(model);
    ServiceQuote q;
    q.model = model;
    try {
        q.tokens = min_token_budget(capability_params(task.descriptor, profile, config.scaling),
                                    task.requirement.tolerance);
    } catch (const InfeasibleTask&) {
        return q;
    }
    auto expenditure = std::make_shared<ExpenditureProfile>(
        discretize_profile(profile, model, q.tokens, config.slot_seconds));
    q.capable = true;
    q.slots = expenditure->slots;
    q.energy = expenditure->energy;
    q.profile = std::move(expenditure);
    return q;
}

std::vector<ServiceQuote> make_quotes(const TaskInstance& task, const SystemConfig& config) {
    std::vector<ServiceQuote> quotes;
    quotes.reserve(config.models.size());
    for (std::size_t i = 0; i < config.models.size(); ++i) quotes.push_back(make_quote(task, i, config));
    return quotes;
}

std::vector<std::size_t> feasible_from(std::span<const ServiceQuote> quotes, Slot available) {
    std::vector<std::size_t> out;
    for (const auto& q : quotes)
        if (q.capable && q.slots <= available) out.push_back(q.model);
    return out;
}

// Minimum energy; ties go to the smaller model, then the lower index.
std::size_t cheapest(std::span<const ServiceQuote> quotes, std::span<const std::size_t> feasible,
                     const SystemConfig& config) {
    std::size_t best = feasible.front();
    for (std::size_t i : feasible.subspan(1)) {
        const double e = quotes[i].energy, eb = quotes[best].energy;
        if (e < eb || (e == eb && config.models[i].dims.params < config.models[best].dims.params)) best = i;
    }
    return best;
}

Allocation allocate(const TaskInstance& task, Slot now, const ServiceQuote& q, double lower_bound) {
    Allocation a;
    a.task = task;
    a.task.dispatch = now;
    a.model = q.model;
    a.tokens = q.tokens;
    a.slots = q.slots;
    a.energy = q.energy;
    a.excess = std::max(0.0, q.energy - lower_bound);
    a.profile = q.profile;
    return a;
}

std::vector<std::size_t> checked_feasible(const TaskInstance& task, Slot now, std::span<const ServiceQuote> quotes,
                                          const SystemConfig& config) {
    auto feasible = feasible_from(quotes, slack(task, now, config));
    if (feasible.empty())
        throw InfeasibleTask(describe(task) + " has no feasible model at slot " + std::to_string(now));
    return feasible;
}

Allocation route_lb_with(const TaskInstance& task, Slot now, std::span<const ServiceQuote> quotes,
                         const SystemConfig& config) {
    const auto feasible = checked_feasible(task, now, quotes, config);
    const auto& best = quotes[cheapest(quotes, feasible, config)];
    Allocation a = allocate(task, now, best, best.energy);
    a.overhead = config.dispatcher_energy;
    return a;
}

Allocation route_noisy_with(const TaskInstance& task, Slot now, std::span<const ServiceQuote> quotes,
                            const SystemConfig& config, double error, Rng& rng) {
    const auto feasible = checked_feasible(task, now, quotes, config);
    const std::size_t best = cheapest(quotes, feasible, config);
    std::size_t chosen = best;
    // Both uniforms are always consumed so routing streams stay aligned across error levels.
    const double u_error = uniform01(rng);
    const double u_pick = uniform01(rng);
    if (u_error < error && feasible.size() > 1) {
        std::vector<std::size_t> others;
        for (std::size_t i : feasible)
            if (i != best) others.push_back(i);
        const auto pick = static_cast<std::size_t>(u_pick * static_cast<double>(others.size()));
        chosen = others[std::min(pick, others.size() - 1)];
    }
    Allocation a = allocate(task, now, quotes[chosen], quotes[best].energy);
    a.misrouted = chosen != best;
    a.overhead = config.dispatcher_energy;
    return a;
}

}  // namespace

ServiceQuote min_service_time(const TaskInstance& task, std::size_t model, const SystemConfig& config) {
    ServiceQuote q = make_quote(task, model, config);
    if (!q.capable)
        throw InfeasibleTask(describe(task) + " cannot reach its tolerance on model " +
                             config.models.at(model).dims.name);
    return q;
}

Slot slack(const TaskInstance& task, Slot now, const SystemConfig& config) {
    return task.arrival + task.requirement.deadline - now - config.dispatcher_latency;
}

std::vector<std::size_t> feasible_set(const TaskInstance& task, Slot now, const SystemConfig& config) {
    return feasible_from(make_quotes(task, config), slack(task, now, config));
}

Allocation route_lb(const TaskInstance& task, Slot now, const SystemConfig& config) {
    return route_lb_with(task, now, make_quotes(task, config), config);
}

Allocation route_noisy(const TaskInstance& task, Slot now, const SystemConfig& config, Rng& rng) {
    return route_noisy_with(task, now, make_quotes(task, config), config, config.prediction_error, rng);
}

Slot default_deadline(const TaskDescriptor& descriptor, double tolerance, const SystemConfig& config) {
    TaskInstance probe;
    probe.descriptor = descriptor;
    probe.requirement.tolerance = tolerance;
    Slot slowest = 0;
    bool any = false;
    for (const auto& q : make_quotes(probe, config)) {
        if (!q.capable) continue;
        any = true;
        slowest = std::max(slowest, q.slots);
    }
    if (!any) throw InfeasibleTask(describe(probe) + " cannot reach its tolerance on any model");
    return 2 * slowest;
}

Router::Router(SystemConfig config) : config_(std::move(config)) {
    quotes_.reserve(config_.arrivals.catalog.size());
    for (std::size_t i = 0; i < config_.arrivals.catalog.size(); ++i)
        quotes_.push_back(make_quotes(make_task(config_.arrivals, i, 0), config_));
}

std::vector<std::size_t> Router::feasible_set(const TaskInstance& task, Slot now) const {
    if (task.catalog_index && *task.catalog_index < quotes_.size())
        return feasible_from(quotes_[*task.catalog_index], slack(task, now, config_));
    return feasible_from(make_quotes(task, config_), slack(task, now, config_));
}

Allocation Router::route_lb(const TaskInstance& task, Slot now) const {
    if (task.catalog_index && *task.catalog_index < quotes_.size())
        return route_lb_with(task, now, quotes_[*task.catalog_index], config_);
    return route_lb_with(task, now, make_quotes(task, config_), config_);
}

Allocation Router::route_noisy(const TaskInstance& task, Slot now, double error, Rng& rng) const {
    if (task.catalog_index && *task.catalog_index < quotes_.size())
        return route_noisy_with(task, now, quotes_[*task.catalog_index], config_, error, rng);
    return route_noisy_with(task, now, make_quotes(task, config_), config_, error, rng);
}

double Router::lower_bound_energy(std::size_t catalog_index) const {
    return route_lb(make_task(config_.arrivals, catalog_index, 0), 0).energy;
}

std::vector<Allocation> route_arrivals(const ArrivalStream& arrivals, const ArrivalModel& catalog,
                                       const RouteFn& route) {
    std::vector<Allocation> out;
    out.reserve(arrivals.total());
    for (Slot t = 0; t < arrivals.horizon(); ++t)
        for (std::uint32_t kind : arrivals.at(t)) out.push_back(route(make_task(catalog, kind, t), t));
    return out;
}

ConsumptionSeries lumped_consumption(std::span<const Allocation> allocations, Slot horizon) {
    ConsumptionSeries c;
    c.per_slot.assign(static_cast<std::size_t>(horizon), 0.0);
    for (const auto& a : allocations) {
        const Slot s = a.task.dispatch.value_or(a.task.arrival);
        if (s >= 0 && s < horizon) c.per_slot[static_cast<std::size_t>(s)] += a.energy + a.overhead;
    }
    return c;
}

ConsumptionSeries distributed_consumption(std::span<const Allocation> allocations, Slot horizon,
                                          Slot dispatcher_latency) {
    ConsumptionSeries c;
    c.per_slot.assign(static_cast<std::size_t>(horizon), 0.0);
    for (const auto& a : allocations) {
        const Slot s = a.task.dispatch.value_or(a.task.arrival);
        if (s >= 0 && s < horizon) c.per_slot[static_cast<std::size_t>(s)] += a.overhead;
        if (!a.profile) continue;
        const Slot start = s + dispatcher_latency;
        for (std::size_t u = 0; u < a.profile->per_slot.size(); ++u) {
            const Slot t = start + static_cast<Slot>(u);
            if (t >= horizon) break;
            if (t >= 0) c.per_slot[static_cast<std::size_t>(t)] += a.profile->per_slot[u];
        }
    }
    return c;
}

ConsumptionSeries lumped_consumption(const ArrivalStream& arrivals, const RouteFn& route,
                                     const SystemConfig& config) {
    return lumped_consumption(route_arrivals(arrivals, config.arrivals, route), arrivals.horizon());
}

ConsumptionSeries distributed_consumption(const ArrivalStream& arrivals, const RouteFn& route,
                                          const SystemConfig& config) {
    return distributed_consumption(route_arrivals(arrivals, config.arrivals, route), arrivals.horizon(),
                                   config.dispatcher_latency);
}

LowerBoundMoments lower_bound_moments(const ArrivalModel& arrivals, const SystemConfig& config) {
    LowerBoundMoments m;
    std::string infeasible;
    for (std::size_t i = 0; i < arrivals.catalog.size(); ++i) {
        const TaskInstance task = make_task(arrivals, i, 0);
        double energy = 0.0;
        try {
            energy = route_lb(task, 0, config).energy;
        } catch (const InfeasibleTask&) {
            infeasible += (infeasible.empty() ? "" : "; ") + describe(task);
            continue;
        }
        const double w = arrivals.catalog[i].weight;
        m.mean_rate += w * energy;
        m.second_rate += w * energy * energy;
    }
    if (!infeasible.empty()) throw InfeasibleTask("catalog entries infeasible at arrival: " + infeasible);
    m.mean_rate *= arrivals.rate;
    m.second_rate *= arrivals.rate;
    return m;
}

double cbar_lb(const ArrivalModel& arrivals, const SystemConfig& config) {
    return lower_bound_moments(arrivals, config).mean_rate;
}

}  // namespace ecoroute
