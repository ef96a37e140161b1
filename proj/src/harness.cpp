#include "ecoroute/harness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ecoroute/battery.hpp"
#include "ecoroute/kernels.hpp"
#include "ecoroute/sampling.hpp"

namespace ecoroute {

namespace {

enum StreamTag : std::uint64_t { arrivals_tag = 1, harvest_tag = 2, routing_tag = 3, trial_tag = 4 };

}  // namespace

std::vector<Slot> geometric_checkpoints(Slot first, Slot last, int count) {
    if (first < 1 || last < first || count < 1) throw DomainError("geometric_checkpoints: need 1 <= first <= last");
    std::vector<Slot> out;
    if (count == 1 || first == last) return {last};
    const double ratio = std::log(static_cast<double>(last) / static_cast<double>(first)) / (count - 1);
    for (int i = 0; i < count; ++i) {
        const Slot t = i == count - 1 ? last : static_cast<Slot>(std::llround(static_cast<double>(first) * std::exp(ratio * i)));
        if (out.empty() || t > out.back()) out.push_back(t);
    }
    return out;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index) {
    return make_stream(master_seed, index, trial_tag)();
}

TrialResult run_trial(const Router& router, double error, std::uint64_t seed, const TrialOptions& options) {
    const SystemConfig& cfg = router.config();
    const Slot horizon = cfg.horizon;
    Rng arrival_rng = make_stream(seed, 0, arrivals_tag);
    Rng harvest_rng = make_stream(seed, 0, harvest_tag);
    Rng routing_rng = make_stream(seed, 0, routing_tag);

    const ArrivalStream arrivals = sample_arrivals(cfg.arrivals, horizon, arrival_rng);
    const std::vector<double> harvest = sample_harvest(cfg.harvest, horizon, harvest_rng);

    TrialResult result;
    result.seed = seed;
    const RouteFn route = [&](const TaskInstance& task, Slot now) {
        Allocation a = router.route_noisy(task, now, error, routing_rng);
        if (a.slots > slack(task, now, cfg))
            throw InfeasibleTask("allocation exceeds slack for catalog entry " +
                                 std::to_string(task.catalog_index.value_or(0)) + " at slot " + std::to_string(now));
        ++result.tasks;
        result.misroutes += a.misrouted ? 1 : 0;
        result.excess += a.excess;
        return a;
    };
    const std::vector<Allocation> allocations = route_arrivals(arrivals, cfg.arrivals, route);
    const ConsumptionSeries consumption = options.mode == ConsumptionMode::lumped
                                              ? lumped_consumption(allocations, horizon)
                                              : distributed_consumption(allocations, horizon, cfg.dispatcher_latency);
    const std::vector<double> running =
        running_deficit(uncontrolled_path(harvest, consumption.per_slot, cfg.initial_battery));

    result.deficits.reserve(options.checkpoints.size());
    for (Slot cp : options.checkpoints) {
        if (cp < 0 || cp > horizon)
            throw DomainError("run_trial: checkpoint " + std::to_string(cp) + " outside [0, horizon]");
        result.deficits.push_back(running[static_cast<std::size_t>(cp)]);
    }
    result.final_deficit = running.back();
    return result;
}

TrialResult run_trial(const SystemConfig& config, double error, std::uint64_t seed, const TrialOptions& options) {
    return run_trial(Router(config), error, seed, options);
}

void aggregate(std::span<const TrialResult> trials, std::vector<double>& mean, std::vector<double>& stderr_) {
    if (trials.empty()) throw DomainError("aggregate: no trials");
    const std::size_t k = trials.front().deficits.size();
    const double n = static_cast<double>(trials.size());
    mean.assign(k, 0.0);
    stderr_.assign(k, 0.0);
    for (const auto& t : trials)
        for (std::size_t j = 0; j < k; ++j) mean[j] += t.deficits[j];
    for (auto& m : mean) m /= n;
    if (trials.size() < 2) return;
    for (const auto& t : trials)
        for (std::size_t j = 0; j < k; ++j) stderr_[j] += (t.deficits[j] - mean[j]) * (t.deficits[j] - mean[j]);
    for (auto& s : stderr_) s = std::sqrt(s / (n - 1.0)) / std::sqrt(n);
}

SweepResult sweep_error(const SystemConfig& config, const SweepOptions& options) {
    if (options.trials < 2) throw DomainError("sweep_error: need at least 2 trials");
    const Router router(config);
    TrialOptions trial_options;
    trial_options.checkpoints = options.checkpoints.empty()
                                    ? geometric_checkpoints(std::min<Slot>(100, config.horizon), config.horizon, 40)
                                    : options.checkpoints;

    SweepResult sweep;
    sweep.moments = myopic_moments(config);
    for (double error : options.errors) {
        if (!(error >= 0.0 && error <= 1.0)) throw ValidationError("errors", "prediction error must lie in [0,1]");
        const auto trials = run_trials(router, error, options.seed, options.trials, trial_options, options.execution,
                                       options.threads);
        SweepPoint p;
        p.error = error;
        p.checkpoints = trial_options.checkpoints;
        p.trials = trials.size();
        aggregate(trials, p.mean, p.stderr_);

        double tasks = 0.0, excess = 0.0, misroutes = 0.0;
        std::vector<double> horizons, deficits;
        horizons.reserve(trials.size() * p.checkpoints.size());
        deficits.reserve(horizons.capacity());
        for (const auto& t : trials) {
            tasks += static_cast<double>(t.tasks);
            excess += t.excess;
            misroutes += static_cast<double>(t.misroutes);
            for (std::size_t j = 0; j < p.checkpoints.size(); ++j) {
                horizons.push_back(static_cast<double>(p.checkpoints[j]));
                deficits.push_back(t.deficits[j]);
            }
        }
        p.mean_excess = tasks > 0.0 ? excess / tasks : 0.0;
        p.misroute_rate = tasks > 0.0 ? misroutes / tasks : 0.0;
        p.measured_drift = sweep.moments.drift - config.arrivals.rate * (p.mean_excess + config.dispatcher_energy);
        p.regime = detect_regime(horizons, deficits, options.bic_lambda);
        sweep.points.push_back(std::move(p));
    }
    return sweep;
}

}  // namespace ecoroute
