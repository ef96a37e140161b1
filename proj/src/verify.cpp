#include "ecoroute/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ecoroute/battery.hpp"
#include "ecoroute/csv.hpp"
#include "ecoroute/diffusion.hpp"
#include "ecoroute/dispatch.hpp"
#include "ecoroute/error.hpp"
#include "ecoroute/kernels.hpp"
#include "ecoroute/parallel.hpp"
#include "ecoroute/sampling.hpp"
#include "ecoroute/scaling.hpp"

namespace ecoroute {

namespace {

using nlohmann::json;

void add_check(VerifyReport& r, std::string name, double measured, double tolerance) {
    const bool ok = std::isfinite(measured) && measured <= tolerance;
    r.checks.push_back({std::move(name), measured, tolerance, ok});
    r.passed = r.passed && ok;
}

std::size_t size_or(const VerifyOptions& o, std::size_t fallback) { return o.scenarios ? o.scenarios : fallback; }

// Battery identities on random signed increments.
VerifyReport verify_thm1(const VerifyOptions& opt) {
    const std::size_t n = size_or(opt, 1000);
    struct Case {
        double total_error = 0.0, gap_error = 0.0, floor = 0.0;
        std::vector<double> harvest, consumption;
        double initial = 0.0;
    };
    std::vector<Case> cases(n);
    for_each_index(n, opt.execution, opt.threads, [&](std::size_t i) {
        Rng rng = make_stream(opt.seed, i, 21);
        Case& c = cases[i];
        const auto horizon = 1 + static_cast<std::size_t>(uniform01(rng) * 500);
        c.initial = 200.0 * uniform01(rng);
        c.harvest.resize(horizon);
        c.consumption.resize(horizon);
        for (std::size_t t = 0; t < horizon; ++t) {
            c.harvest[t] = 100.0 * uniform01(rng);
            c.consumption[t] = 120.0 * uniform01(rng);
        }
        const BatteryTrace tr = simulate_battery(c.harvest, c.consumption, c.initial);
        const double d = deficit(tr.uncontrolled);
        const double scale = std::max(1.0, d);
        c.total_error = std::abs(tr.deficit - d) / scale;
        double injected = 0.0;
        for (std::size_t t = 0; t <= horizon; ++t) {
            c.gap_error = std::max(c.gap_error, std::abs(tr.controlled[t] - tr.uncontrolled[t] - injected) / scale);
            if (t < horizon) injected += tr.injections[t];
        }
        c.floor = std::max(0.0, -*std::min_element(tr.controlled.begin(), tr.controlled.end()));
    });

    VerifyReport r;
    r.suite = "thm1";
    double total = 0.0, gap = 0.0, floor = 0.0;
    for (const Case& c : cases) {
        total = std::max(total, c.total_error);
        gap = std::max(gap, c.gap_error);
        floor = std::max(floor, c.floor);
    }
    add_check(r, "injections_equal_deficit", total, 1e-9);
    add_check(r, "controlled_minus_uncontrolled_equals_injected", gap, 1e-9);
    add_check(r, "controlled_nonnegative", floor, 0.0);
    for (std::size_t i = 0; i < n && !r.passed; ++i) {
        const Case& c = cases[i];
        if (c.total_error > 1e-9 || c.gap_error > 1e-9 || c.floor > 0.0) {
            r.counterexample = {{"scenario", i},     {"initial", c.initial},         {"harvest", c.harvest},
                                {"consumption", c.consumption}, {"total_error", c.total_error}, {"gap_error", c.gap_error}};
            break;
        }
    }
    return r;
}

// Spreading consumption over service never lowers the battery below the lumped path.
VerifyReport verify_lumped_dominance(const SystemConfig& config, const VerifyOptions& opt) {
    const std::size_t n = size_or(opt, 1000);
    const Router router(config);
    struct Case {
        std::size_t violations = 0;
        double worst = 0.0;  // largest shortfall of the distributed path
        Slot horizon = 0, first_violation = -1;
        double error = 0.0, initial = 0.0;
    };
    std::vector<Case> cases(n);
    for_each_index(n, opt.execution, opt.threads, [&](std::size_t i) {
        Rng rng = make_stream(opt.seed, i, 22);
        Case& c = cases[i];
        c.horizon = 20 + static_cast<Slot>(uniform01(rng) * 381);
        c.error = uniform01(rng);
        c.initial = 2000.0 * uniform01(rng);
        const ArrivalStream arrivals = sample_arrivals(config.arrivals, c.horizon, rng);
        const std::vector<double> harvest = sample_harvest(config.harvest, c.horizon, rng);
        const auto allocations = route_arrivals(arrivals, config.arrivals, [&](const TaskInstance& task, Slot now) {
            return router.route_noisy(task, now, c.error, rng);
        });
        const auto lumped = lumped_consumption(allocations, c.horizon);
        const auto spread = distributed_consumption(allocations, c.horizon, config.dispatcher_latency);
        const auto bl = uncontrolled_path(harvest, lumped.per_slot, c.initial);
        const auto bd = uncontrolled_path(harvest, spread.per_slot, c.initial);
        const double total = std::accumulate(lumped.per_slot.begin(), lumped.per_slot.end(), 0.0);
        const double slop = 1e-9 * std::max(1.0, total);
        for (std::size_t t = 0; t < bl.size(); ++t) {
            const double shortfall = bl[t] - bd[t];
            if (shortfall > slop) {
                if (c.violations++ == 0) c.first_violation = static_cast<Slot>(t);
                c.worst = std::max(c.worst, shortfall);
            }
        }
        if (deficit(bd) > deficit(bl) + slop) ++c.violations;
    });

    VerifyReport r;
    r.suite = "lumped-dominance";
    std::size_t bad = 0;
    for (const Case& c : cases) bad += c.violations > 0;
    add_check(r, "scenarios_with_violation", static_cast<double>(bad), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Case& c = cases[i];
        if (c.violations) {
            r.counterexample = {{"scenario", i},           {"seed", opt.seed},   {"horizon", c.horizon},
                                {"error", c.error},        {"initial", c.initial}, {"first_violation", c.first_violation},
                                {"worst_shortfall", c.worst}};
            break;
        }
    }
    return r;
}

// Var of the lumped total over T slots against T * rate * E[E_LB^2].
VerifyReport verify_variance_lemma(const SystemConfig& config, const VerifyOptions& opt) {
    const std::size_t n = size_or(opt, 10000);
    const Slot horizon = 100;
    const Router router(config);
    const auto totals = lumped_totals(router, horizon, n, opt.seed, opt.execution, opt.threads);
    const double mean = std::accumulate(totals.begin(), totals.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double x : totals) ss += (x - mean) * (x - mean);
    const double var = ss / static_cast<double>(n - 1);
    const LowerBoundMoments m = lower_bound_moments(config.arrivals, config);
    const double want_var = m.second_rate * static_cast<double>(horizon);
    const double want_mean = m.mean_rate * static_cast<double>(horizon);

    VerifyReport r;
    r.suite = "variance-lemma";
    add_check(r, "variance_relative_error", std::abs(var - want_var) / want_var, 0.05);
    add_check(r, "mean_relative_error", std::abs(mean - want_mean) / want_mean, 0.01);
    if (!r.passed)
        r.counterexample = {{"trials", n},      {"horizon", horizon}, {"sample_variance", var},
                            {"predicted_variance", want_var}, {"sample_mean", mean}, {"predicted_mean", want_mean}};
    return r;
}

VerifyReport verify_beta_oracle() {
    VerifyReport r;
    r.suite = "beta-oracle";
    double worst = 0.0;
    json where;
    for (int a = 1; a <= 20; ++a)
        for (int b = 1; b <= 20; ++b)
            for (int k = 0; k <= 20; ++k) {
                const double x = 0.05 * k;
                const double err = std::abs(reg_inc_beta(x, a, b) - binomial_beta_oracle(x, a, b));
                if (!(err <= worst)) {
                    worst = err;
                    where = {{"x", x}, {"a", a}, {"b", b}, {"abs_error", err}};
                }
            }
    add_check(r, "max_abs_error", worst, 1e-9);
    if (!r.passed) r.counterexample = where;
    return r;
}

// Integral of the analytic survival function, for comparison with E[D_T].
double survival_integral(const DriftSpec& d, double horizon) {
    const double width = d.sigma * std::sqrt(horizon);
    const double centre = std::max(0.0, -d.mu) * horizon;
    const double top = centre + 40.0 * width;
    auto sf = [&](double z) { return 1.0 - deficit_cdf(z, d, horizon); };
    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0;
    const double lo = std::max(0.0, centre - 40.0 * width);
    if (lo > 0.0) total += gauss_kronrod<double, 61>::integrate(sf, 0.0, lo, 10, 1e-13);
    // Split the bulk so the kernel density of nodes follows the shape of sf.
    const int pieces = 16;
    for (int k = 0; k < pieces; ++k) {
        const double a = lo + (top - lo) * k / pieces, b = lo + (top - lo) * (k + 1) / pieces;
        total += gauss_kronrod<double, 61>::integrate(sf, a, b, 10, 1e-13);
    }
    return total;
}

// Random-walk deficits against the Brownian deficit law.
VerifyReport verify_donsker(const VerifyOptions& opt) {
    const std::size_t paths = size_or(opt, 10000);
    const std::size_t steps = 10000;
    const double horizon = static_cast<double>(steps);
    VerifyReport r;
    r.suite = "donsker";
    const double quantiles[] = {0.25, 0.5, 0.75};
    std::uint64_t stream = 0;
    for (double mu : {0.0, 0.01, -0.01}) {
        const DriftSpec d{mu, 1.0};
        auto sample = random_walk_deficits(d, steps, paths, opt.seed + stream++, opt.execution, opt.threads);
        std::sort(sample.begin(), sample.end());
        double worst = 0.0;
        for (double q : quantiles) {
            const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(paths))) - 1;
            worst = std::max(worst, std::abs(deficit_cdf(sample[idx], d, horizon) - q));
        }
        const std::string tag = "mu=" + format_real(mu);
        add_check(r, "quantile_cdf_error[" + tag + "]", worst, 0.02);
        const double mean = expected_deficit(d, horizon);
        add_check(r, "tail_integral_relative_error[" + tag + "]",
                  std::abs(survival_integral(d, horizon) - mean) / mean, 1e-3);
        if (!r.passed && r.counterexample.is_null())
            r.counterexample = {{"mu", mu}, {"sigma", 1.0}, {"steps", steps}, {"paths", paths}, {"seed", opt.seed}};
    }
    return r;
}

// Limits of E[D_T] at large |a| and agreement across the zero-drift switch.
VerifyReport verify_continuity() {
    VerifyReport r;
    r.suite = "continuity";
    double limit = 0.0, jump = 0.0;
    json where;
    for (double sigma : {1.0, 892.0})
        for (double horizon : {100.0, 1e4, 1e5}) {
            const double unit = sigma / std::sqrt(horizon);
            for (double a : {6.0, 8.0, 10.0, -6.0, -8.0, -10.0}) {
                const DriftSpec d{a * unit, sigma};
                const double e = expected_deficit(d, horizon), lim = regime_asymptote(d, horizon);
                const double err = std::abs(e - lim) / lim;
                if (err > limit) {
                    limit = err;
                    if (err > 1e-3) where = {{"sigma", sigma}, {"horizon", horizon}, {"a", a}, {"relative_error", err}};
                }
            }
            for (double sign : {1.0, -1.0}) {
                const double above = expected_deficit({sign * 1e-6 * (1 + 1e-6) * unit, sigma}, horizon);
                const double below = expected_deficit({sign * 1e-6 * (1 - 1e-6) * unit, sigma}, horizon);
                const double err = std::abs(above - below) / below;
                if (err > jump) {
                    jump = err;
                    if (err > 1e-6) where = {{"sigma", sigma}, {"horizon", horizon}, {"sign", sign}, {"relative_jump", err}};
                }
            }
        }
    add_check(r, "large_drift_limit_relative_error", limit, 1e-3);
    add_check(r, "zero_drift_switch_relative_jump", jump, 1e-6);
    if (!r.passed) r.counterexample = where;
    return r;
}

}  // namespace

double binomial_beta_oracle(double x, int a, int b) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const int n = a + b - 1;
    double sum = 0.0, choose = 1.0;  // C(n, j)
    for (int j = 0; j <= n; ++j) {
        if (j > 0) choose = choose * (n - j + 1) / j;
        if (j >= a) sum += choose * std::pow(x, j) * std::pow(1.0 - x, n - j);
    }
    return sum;
}

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"thm1",        "lumped-dominance", "variance-lemma",
                                                "beta-oracle", "donsker",          "continuity"};
    return names;
}

VerifyReport run_verify(const std::string& suite, const SystemConfig& config, const VerifyOptions& options) {
    if (suite == "thm1") return verify_thm1(options);
    if (suite == "lumped-dominance") return verify_lumped_dominance(config, options);
    if (suite == "variance-lemma") return verify_variance_lemma(config, options);
    if (suite == "beta-oracle") return verify_beta_oracle();
    if (suite == "donsker") return verify_donsker(options);
    if (suite == "continuity") return verify_continuity();
    std::string known;
    for (const auto& s : verify_suites()) known += (known.empty() ? "" : ", ") + s;
    throw ValidationError("suite", "unknown verify suite '" + suite + "' (known: " + known + ")");
}

json to_json(const VerifyReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"passed", c.passed}});
    return {{"suite", report.suite}, {"passed", report.passed}, {"checks", checks},
            {"counterexample", report.counterexample}};
}

}  // namespace ecoroute
