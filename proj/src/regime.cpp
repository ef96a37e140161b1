#include "ecoroute/regime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ecoroute/error.hpp"

namespace ecoroute {

const char* to_string(RegimeVerdict v) { return v == RegimeVerdict::segmented ? "segmented" : "pure-sqrt"; }

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size()) throw DomainError("fit_line: length mismatch");
    if (n < 2) throw DomainError("fit_line: need at least two observations");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fit_line: regressor has no spread");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        f.sse += r * r;
    }
    return f;
}

std::vector<double> default_candidates(std::span<const double> horizons) {
    std::vector<double> grid(horizons.begin(), horizons.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.size() < 6) return {};
    return {grid.begin() + 2, grid.end() - 3};
}

BreakpointReport detect_regime(std::span<const double> horizons, std::span<const double> deficits, double lambda,
                               std::span<const double> candidates) {
    if (horizons.size() != deficits.size()) throw DomainError("detect_regime: length mismatch");
    std::vector<double> distinct(horizons.begin(), horizons.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 8)
        throw DomainError("detect_regime: need at least 8 distinct horizons, got " + std::to_string(distinct.size()));

    const std::size_t n = horizons.size();
    const double dn = static_cast<double>(n);
    double mean_square = 0.0;
    for (double d : deficits) mean_square += d * d;
    mean_square /= dn;
    // Exact fits would send log(MSE) to -inf; floor at round-off level.
    const double mse_floor = std::max(1e-24 * mean_square, std::numeric_limits<double>::min());
    auto bic = [&](double sse, double params) {
        return dn * std::log(std::max(sse / dn, mse_floor)) + lambda * params * std::log(dn);
    };

    std::vector<double> root(n);
    for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(horizons[i]);

    BreakpointReport report;
    report.observations = n;
    report.pure = fit_line(root, deficits);
    report.bic_pure = bic(report.pure.sse, 2.0);
    report.bic_segmented = std::numeric_limits<double>::infinity();

    std::vector<double> owned;
    if (candidates.empty()) {
        owned = default_candidates(horizons);
        candidates = owned;
    }
    std::vector<double> lo_x, lo_y, hi_x, hi_y;
    for (double tk : candidates) {
        lo_x.clear();
        lo_y.clear();
        hi_x.clear();
        hi_y.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (horizons[i] < tk) {
                lo_x.push_back(root[i]);
                lo_y.push_back(deficits[i]);
            } else {
                hi_x.push_back(horizons[i]);
                hi_y.push_back(deficits[i]);
            }
        }
        LineFit below, above;
        try {
            below = fit_line(lo_x, lo_y);
        } catch (const DomainError&) {
            throw DomainError("detect_regime: square-root segment below T_k=" + std::to_string(tk) + " is degenerate");
        }
        try {
            above = fit_line(hi_x, hi_y);
        } catch (const DomainError&) {
            throw DomainError("detect_regime: linear segment at/above T_k=" + std::to_string(tk) + " is degenerate");
        }
        const double score = bic(below.sse + above.sse, 5.0);
        if (score < report.bic_segmented) {
            report.bic_segmented = score;
            report.best_candidate = tk;
            report.sqrt_segment = below;
            report.linear_segment = above;
        }
    }
    if (report.bic_segmented < report.bic_pure) {
        report.verdict = RegimeVerdict::segmented;
        report.breakpoint = report.best_candidate;
    }
    return report;
}

}  // namespace ecoroute
