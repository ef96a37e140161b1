#pragma once

// Data-parallel Monte Carlo kernels. Every kernel has a serial reference and
// an OpenMP path; each work item draws from its own stream, so both paths
// produce bitwise-identical output for any thread count.

#include <cstdint>
#include <vector>

#include "ecoroute/diffusion.hpp"
#include "ecoroute/harness.hpp"

namespace ecoroute {

/// Trials 0..count-1 with seeds trial_seed(master_seed, i).
std::vector<TrialResult> run_trials(const Router& router, double error, std::uint64_t master_seed, std::size_t count,
                                    const TrialOptions& options, Execution execution, int threads = 0);

/// Deficit (-min_{0..steps} S)^+ of Gaussian random walks with increments N(mu, sigma^2).
std::vector<double> random_walk_deficits(const DriftSpec& drift, std::size_t steps, std::size_t paths,
                                         std::uint64_t seed, Execution execution, int threads = 0);

/// Total lumped consumption over `horizon` slots under minimum-energy routing, one value per trial.
std::vector<double> lumped_totals(const Router& router, Slot horizon, std::size_t trials, std::uint64_t seed,
                                  Execution execution, int threads = 0);

}  // namespace ecoroute
