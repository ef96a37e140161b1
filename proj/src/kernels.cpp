#include "ecoroute/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "ecoroute/parallel.hpp"
#include "ecoroute/sampling.hpp"

namespace ecoroute {

namespace {

double walk_deficit(const DriftSpec& drift, std::size_t steps, Rng& rng) {
    std::normal_distribution<double> step(drift.mu, drift.sigma);
    double level = 0.0, low = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        level += step(rng);
        low = std::min(low, level);
    }
    return -low;
}

}  // namespace

std::vector<TrialResult> run_trials(const Router& router, double error, std::uint64_t master_seed, std::size_t count,
                                    const TrialOptions& options, Execution execution, int threads) {
    std::vector<TrialResult> out(count);
    for_each_index(count, execution, threads,
                   [&](std::size_t i) { out[i] = run_trial(router, error, trial_seed(master_seed, i), options); });
    return out;
}

std::vector<double> random_walk_deficits(const DriftSpec& drift, std::size_t steps, std::size_t paths,
                                         std::uint64_t seed, Execution execution, int threads) {
    if (!(drift.sigma > 0.0)) throw DomainError("random_walk_deficits: sigma must be > 0");
    std::vector<double> out(paths);
    for_each_index(paths, execution, threads, [&](std::size_t i) {
        Rng rng = make_stream(seed, i, 11);
        out[i] = walk_deficit(drift, steps, rng);
    });
    return out;
}

std::vector<double> lumped_totals(const Router& router, Slot horizon, std::size_t trials, std::uint64_t seed,
                                  Execution execution, int threads) {
    const SystemConfig& cfg = router.config();
    std::vector<double> out(trials);
    for_each_index(trials, execution, threads, [&](std::size_t i) {
        Rng rng = make_stream(seed, i, 12);
        const ArrivalStream arrivals = sample_arrivals(cfg.arrivals, horizon, rng);
        const auto allocations = route_arrivals(
            arrivals, cfg.arrivals, [&](const TaskInstance& task, Slot now) { return router.route_lb(task, now); });
        const ConsumptionSeries c = lumped_consumption(allocations, horizon);
        out[i] = std::accumulate(c.per_slot.begin(), c.per_slot.end(), 0.0);
    });
    return out;
}

}  // namespace ecoroute
