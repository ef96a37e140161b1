#pragma once

// Monte Carlo trials of the myopic dispatcher against a stochastic harvest,
// prediction-error sweeps, and their aggregation.

#include <cstdint>
#include <span>
#include <vector>

#include "ecoroute/diffusion.hpp"
#include "ecoroute/dispatch.hpp"
#include "ecoroute/regime.hpp"

namespace ecoroute {

enum class ConsumptionMode { lumped, distributed };

enum class Execution { serial, parallel };

struct TrialOptions {
    std::vector<Slot> checkpoints;  // slots at which the running deficit is recorded
    ConsumptionMode mode = ConsumptionMode::lumped;
};

struct TrialResult {
    std::uint64_t seed = 0;
    std::vector<double> deficits;  // running deficit at each checkpoint
    double final_deficit = 0.0;    // at the horizon
    std::size_t tasks = 0;
    std::size_t misroutes = 0;
    double excess = 0.0;           // summed over tasks
};

/// `count` checkpoints geometrically spaced on [first, last], rounded to
/// whole slots and deduplicated.
std::vector<Slot> geometric_checkpoints(Slot first, Slot last, int count);

/// Seed of trial `index` under `master_seed`.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index);

/// One trial: sample arrivals and harvest, route every task at arrival with
/// prediction error `error`, build the consumption series, and track the
/// running deficit of the unconstrained battery path.
TrialResult run_trial(const Router& router, double error, std::uint64_t seed, const TrialOptions& options);
TrialResult run_trial(const SystemConfig& config, double error, std::uint64_t seed, const TrialOptions& options);

struct SweepPoint {
    double error = 0.0;
    std::vector<Slot> checkpoints;
    std::vector<double> mean;
    std::vector<double> stderr_;
    std::size_t trials = 0;
    double mean_excess = 0.0;     // per task
    double misroute_rate = 0.0;   // per task
    double measured_drift = 0.0;  // configured drift minus rate * (mean excess + dispatcher energy)
    BreakpointReport regime;      // fitted on every (checkpoint, trial) observation
};

struct SweepResult {
    MyopicMoments moments;
    std::vector<SweepPoint> points;
};

struct SweepOptions {
    std::vector<double> errors{0.0, 0.05, 0.1, 0.2};
    std::size_t trials = 100;
    std::vector<Slot> checkpoints;  // empty: 40 geometric points on [100, horizon]
    std::uint64_t seed = 1;
    double bic_lambda = 2.0;
    Execution execution = Execution::parallel;
    int threads = 0;  // 0: OpenMP default
};

/// Trials share seeds across error levels, so arrivals, harvest and routing
/// uniforms are common random numbers and only the routing outcome differs.
SweepResult sweep_error(const SystemConfig& config, const SweepOptions& options);

/// Aggregates trial checkpoints into mean and standard error (sample std / sqrt(n)).
void aggregate(std::span<const TrialResult> trials, std::vector<double>& mean, std::vector<double>& stderr_);

}  // namespace ecoroute
