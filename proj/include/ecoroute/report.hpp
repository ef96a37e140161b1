#pragma once

// Tables behind the command-line outputs: per-task energy/latency tradeoff,
// the deviation curve over a kappa grid, and sweep aggregates.

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ecoroute/diffusion.hpp"
#include "ecoroute/dispatch.hpp"
#include "ecoroute/harness.hpp"

namespace ecoroute {

struct TradeoffRow {
    std::size_t task = 0;  // catalog index
    double difficulty = 0.0;
    int skills = 0;
    double tolerance = 0.0;
    std::string model;
    double params = 0.0;
    double capability = 0.0;  // per-skill success rate
    bool infeasible = false;  // tolerance unreachable; budget columns are NaN
    double tokens = 0.0;
    double service_time = 0.0;  // s
    Slot slots = 0;
    double energy = 0.0;  // J
};

/// One row per (catalog entry, model), catalog-major.
std::vector<TradeoffRow> tradeoff_table(const Router& router);
void write_tradeoff_csv(std::ostream& out, std::span<const TradeoffRow> rows);

struct AnalyticsGrid {
    double sigma = 1.0;
    double horizon = 1.0;
    double kappa_min = -5.0;
    double kappa_max = 5.0;
    int points = 201;  // odd counts include kappa = 0 exactly
};

struct AnalyticsRow {
    double kappa = 0.0;
    double mu = 0.0;
    double deviation = 0.0;
    double expected_deficit = 0.0;
    double asymptote = 0.0;
    DriftRegime regime = DriftRegime::critical;
};

std::vector<AnalyticsRow> analytics_table(const AnalyticsGrid& grid);
void write_analytics_csv(std::ostream& out, const AnalyticsGrid& grid, std::span<const AnalyticsRow> rows);

const char* to_string(DriftRegime r);

/// One row per (error level, checkpoint) with the fitted curves evaluated at
/// each checkpoint: fit_sqrt below the breakpoint (everywhere for pure-sqrt),
/// fit_linear at and above it.
void write_sweep_csv(std::ostream& out, const std::string& experiment, const SweepResult& sweep);

void write_trials_csv(std::ostream& out, double error, std::span<const TrialResult> trials);

}  // namespace ecoroute
