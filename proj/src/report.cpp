#include "ecoroute/report.hpp"

#include <cmath>
#include <limits>

#include "ecoroute/csv.hpp"
#include "ecoroute/error.hpp"
#include "ecoroute/scaling.hpp"

namespace ecoroute {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

using Cell = CsvWriter::Cell;

Cell real_or_blank(bool present, double v) { return present ? Cell{v} : Cell{}; }

}  // namespace

std::vector<TradeoffRow> tradeoff_table(const Router& router) {
    const SystemConfig& cfg = router.config();
    std::vector<TradeoffRow> rows;
    for (std::size_t i = 0; i < cfg.arrivals.catalog.size(); ++i) {
        const CatalogEntry& e = cfg.arrivals.catalog[i];
        for (const ServiceQuote& q : router.quotes(i)) {
            const ModelProfile& m = cfg.models[q.model];
            TradeoffRow r;
            r.task = i;
            r.difficulty = e.descriptor.difficulty;
            r.skills = e.descriptor.skills;
            r.tolerance = e.requirement.tolerance;
            r.model = m.dims.name;
            r.params = m.dims.params;
            r.capability = capability_params(e.descriptor, m, cfg.scaling).success_rate;
            r.infeasible = !q.capable;
            r.tokens = q.capable ? q.tokens : nan;
            r.service_time = q.capable ? q.profile->seconds : nan;
            r.slots = q.capable ? q.slots : 0;
            r.energy = q.capable ? q.energy : nan;
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

void write_tradeoff_csv(std::ostream& out, std::span<const TradeoffRow> rows) {
    CsvWriter w(out, {"task", "difficulty", "skills", "tolerance", "model", "params", "capability", "token_budget",
                      "service_time_s", "slots", "energy_j", "infeasible"});
    for (const auto& r : rows)
        w.row({static_cast<long long>(r.task), r.difficulty, static_cast<long long>(r.skills), r.tolerance, r.model,
               r.params, r.capability, r.tokens, r.service_time,
               r.infeasible ? Cell{} : Cell{static_cast<long long>(r.slots)}, r.energy,
               static_cast<long long>(r.infeasible)});
}

const char* to_string(DriftRegime r) {
    switch (r) {
        case DriftRegime::deficit: return "deficit";
        case DriftRegime::surplus: return "surplus";
        case DriftRegime::critical: break;
    }
    return "critical";
}

std::vector<AnalyticsRow> analytics_table(const AnalyticsGrid& grid) {
    if (grid.points < 2) throw DomainError("analytics grid needs at least two points");
    std::vector<AnalyticsRow> rows;
    rows.reserve(static_cast<std::size_t>(grid.points));
    const int last = grid.points - 1;
    for (int k = 0; k <= last; ++k) {
        double kappa = k == last ? grid.kappa_max : grid.kappa_min + (grid.kappa_max - grid.kappa_min) * k / last;
        if (2 * k == last && grid.kappa_min == -grid.kappa_max) kappa = 0.0;
        AnalyticsRow r;
        r.kappa = kappa;
        r.mu = drift_for_kappa(kappa, grid.sigma, grid.horizon);
        const DriftSpec d{r.mu, grid.sigma};
        r.deviation = deviation_curve(d, grid.horizon).deviation;
        r.expected_deficit = expected_deficit(d, grid.horizon);
        r.asymptote = regime_asymptote(d, grid.horizon);
        r.regime = regime_of(d);
        rows.push_back(r);
    }
    return rows;
}

void write_analytics_csv(std::ostream& out, const AnalyticsGrid& grid, std::span<const AnalyticsRow> rows) {
    CsvWriter w(out, {"kappa", "mu", "sigma", "T", "deviation", "expected_deficit", "asymptote", "regime"});
    for (const auto& r : rows)
        w.row({r.kappa, r.mu, grid.sigma, grid.horizon, r.deviation, r.expected_deficit, r.asymptote,
               std::string(to_string(r.regime))});
}

void write_sweep_csv(std::ostream& out, const std::string& experiment, const SweepResult& sweep) {
    CsvWriter w(out, {"experiment", "error", "T", "mean_D", "stderr_D", "trials", "verdict", "T_k", "fit_sqrt",
                      "fit_linear", "sqrt_slope", "drift", "measured_drift", "sigma", "misroute_rate", "mean_excess"});
    const double sigma = std::sqrt(sweep.moments.variance);
    for (const SweepPoint& p : sweep.points) {
        const BreakpointReport& reg = p.regime;
        const bool segmented = reg.verdict == RegimeVerdict::segmented;
        for (std::size_t j = 0; j < p.checkpoints.size(); ++j) {
            const double t = static_cast<double>(p.checkpoints[j]);
            const bool below = !segmented || t < *reg.breakpoint;
            const LineFit& root = segmented ? reg.sqrt_segment : reg.pure;
            w.row({experiment, p.error, static_cast<long long>(p.checkpoints[j]), p.mean[j], p.stderr_[j],
                   static_cast<long long>(p.trials), std::string(to_string(reg.verdict)),
                   real_or_blank(segmented, segmented ? *reg.breakpoint : 0.0),
                   real_or_blank(below, root.slope * std::sqrt(t) + root.intercept),
                   real_or_blank(!below, reg.linear_segment.slope * t + reg.linear_segment.intercept),
                   reg.pure.slope, sweep.moments.drift, p.measured_drift, sigma, p.misroute_rate, p.mean_excess});
        }
    }
}

void write_trials_csv(std::ostream& out, double error, std::span<const TrialResult> trials) {
    CsvWriter w(out, {"trial", "seed", "error", "tasks", "misroutes", "excess_j", "final_D"});
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const TrialResult& t = trials[i];
        w.row({static_cast<long long>(i), std::to_string(t.seed), error, static_cast<long long>(t.tasks),
               static_cast<long long>(t.misroutes), t.excess, t.final_deficit});
    }
}

}  // namespace ecoroute
