#pragma once

// BIC model selection between a pure square-root growth curve and a
// square-root-then-linear segmented curve.

#include <optional>
#include <span>
#include <vector>

namespace ecoroute {

enum class RegimeVerdict { pure_sqrt, segmented };

const char* to_string(RegimeVerdict v);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double sse = 0.0;
};

struct BreakpointReport {
    RegimeVerdict verdict = RegimeVerdict::pure_sqrt;
    std::optional<double> breakpoint;  // T_k when segmented
    double bic_pure = 0.0;
    double bic_segmented = 0.0;        // best over candidates
    double best_candidate = 0.0;       // argmin candidate, reported even when pure wins
    std::size_t observations = 0;
    LineFit pure;                      // D ~ m sqrt(T) + b over all observations
    LineFit sqrt_segment;              // T < T_k at the best candidate
    LineFit linear_segment;            // T >= T_k at the best candidate
};

/// Least-squares y ~ slope * x + intercept. Throws DomainError when x has
/// fewer than two distinct values.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Distinct horizons from the 3rd to the (n-3)rd, in increasing order.
std::vector<double> default_candidates(std::span<const double> horizons);

/// Observations are (horizon, deficit) pairs; horizons may repeat (one pair
/// per trial and checkpoint). The BIC is n log(MSE) + lambda p log(n) with
/// p = 2 (pure) and p = 5 (segmented). Needs at least 8 distinct horizons.
BreakpointReport detect_regime(std::span<const double> horizons, std::span<const double> deficits,
                               double lambda = 2.0, std::span<const double> candidates = {});

}  // namespace ecoroute
