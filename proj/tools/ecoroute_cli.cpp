// ecoroute: energy-aware routing experiments from the command line.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecoroute/config_io.hpp"
#include "ecoroute/csv.hpp"
#include "ecoroute/error.hpp"
#include "ecoroute/kernels.hpp"
#include "ecoroute/report.hpp"
#include "ecoroute/verify.hpp"

namespace fs = std::filesystem;
using namespace ecoroute;

namespace {

enum Exit : int { ok = 0, failure = 1, invalid = 2, infeasible = 3, verify_failed = 4 };

struct Common {
    std::string config;
    std::string out = ".";
    std::uint64_t seed = 1;
    std::vector<std::string> overrides;
    std::optional<std::size_t> trials;
    int parallel = 1;  // 1: serial; 0: OpenMP default thread count
};

struct SweepFlags {
    std::vector<double> errors{0.0, 0.05, 0.1, 0.2};
    int checkpoints = 40;
    double lambda = 2.0;
    std::string experiment;
};

struct AnalyticsFlags {
    std::optional<double> sigma;
    std::optional<double> horizon;
    double kappa_min = -5.0;
    double kappa_max = 5.0;
    int points = 201;
};

SystemConfig need_config(const Common& c) {
    if (c.config.empty()) throw ValidationError("--config", "this command needs a config file");
    return load_config(c.config, c.overrides);
}

Execution execution(const Common& c) { return c.parallel == 1 ? Execution::serial : Execution::parallel; }

std::ofstream open_out(const Common& c, const std::string& name) {
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) throw ValidationError("--out", "cannot create " + c.out + ": " + ec.message());
    const fs::path path = fs::path(c.out) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("--out", "cannot write " + path.string());
    return f;
}

void announce(const Common& c, const std::string& name) { std::cout << "wrote " << (fs::path(c.out) / name).string() << '\n'; }

SweepResult run_sweep(const SystemConfig& cfg, const Common& c, const SweepFlags& s) {
    SweepOptions o;
    o.errors = s.errors;
    o.trials = c.trials.value_or(100);
    o.seed = c.seed;
    o.bic_lambda = s.lambda;
    o.execution = execution(c);
    o.threads = c.parallel > 1 ? c.parallel : 0;
    o.checkpoints = geometric_checkpoints(std::min<Slot>(100, cfg.horizon), cfg.horizon, s.checkpoints);
    return sweep_error(cfg, o);
}

AnalyticsGrid analytics_grid(const AnalyticsFlags& a, const std::optional<SystemConfig>& cfg) {
    AnalyticsGrid g;
    if (a.sigma)
        g.sigma = *a.sigma;
    else if (cfg)
        g.sigma = std::sqrt(myopic_moments(*cfg).variance);
    if (a.horizon)
        g.horizon = *a.horizon;
    else if (cfg)
        g.horizon = static_cast<double>(cfg->horizon);
    else
        throw ValidationError("--horizon", "give --horizon or --config");
    if (!(g.sigma > 0.0)) throw ValidationError("--sigma", "must be > 0");
    if (!(g.horizon > 0.0)) throw ValidationError("--horizon", "must be > 0");
    g.kappa_min = a.kappa_min;
    g.kappa_max = a.kappa_max;
    g.points = a.points;
    return g;
}

int cmd_simulate(const Common& c, double error_flag, const std::string& mode) {
    SystemConfig cfg = need_config(c);
    const double error = error_flag >= 0.0 ? error_flag : cfg.prediction_error;
    TrialOptions opts;
    opts.mode = mode == "distributed" ? ConsumptionMode::distributed : ConsumptionMode::lumped;
    opts.checkpoints = {cfg.horizon};
    const Router router(std::move(cfg));
    const auto trials = run_trials(router, error, c.seed, c.trials.value_or(1), opts, execution(c),
                                   c.parallel > 1 ? c.parallel : 0);
    auto f = open_out(c, "simulate.csv");
    write_trials_csv(f, error, trials);
    announce(c, "simulate.csv");
    double mean = 0.0;
    for (const auto& t : trials) mean += t.final_deficit / static_cast<double>(trials.size());
    std::cout << "trials=" << trials.size() << " mean_D_T=" << format_real(mean) << '\n';
    return ok;
}

int cmd_sweep(const Common& c, SweepFlags s) {
    const SystemConfig cfg = need_config(c);
    const SweepResult r = run_sweep(cfg, c, s);
    auto f = open_out(c, "sweep.csv");
    write_sweep_csv(f, s.experiment.empty() ? "sweep" : s.experiment, r);
    announce(c, "sweep.csv");
    for (const auto& p : r.points)
        std::cout << "error=" << format_real(p.error) << " verdict=" << to_string(p.regime.verdict)
                  << (p.regime.breakpoint ? " T_k=" + format_real(*p.regime.breakpoint) : std::string()) << '\n';
    return ok;
}

int cmd_analytics(const Common& c, const AnalyticsFlags& a) {
    std::optional<SystemConfig> cfg;
    if (!c.config.empty()) cfg = need_config(c);
    const AnalyticsGrid g = analytics_grid(a, cfg);
    auto f = open_out(c, "analytics.csv");
    write_analytics_csv(f, g, analytics_table(g));
    announce(c, "analytics.csv");
    return ok;
}

int cmd_tradeoff(const Common& c) {
    const Router router(need_config(c));
    auto f = open_out(c, "tradeoff.csv");
    write_tradeoff_csv(f, tradeoff_table(router));
    announce(c, "tradeoff.csv");
    return ok;
}

int cmd_verify(const Common& c, std::vector<std::string> suites) {
    if (suites.empty()) suites = verify_suites();
    std::optional<SystemConfig> cfg;
    for (const auto& s : suites)
        if (s == "lumped-dominance" || s == "variance-lemma") cfg = need_config(c);
    VerifyOptions o;
    o.seed = c.seed;
    o.scenarios = c.trials.value_or(0);
    o.execution = execution(c);
    o.threads = c.parallel > 1 ? c.parallel : 0;
    nlohmann::json reports = nlohmann::json::array();
    bool all = true;
    for (const auto& s : suites) {
        const VerifyReport r = run_verify(s, cfg.value_or(SystemConfig{}), o);
        for (const auto& ch : r.checks)
            std::cout << (ch.passed ? "PASS " : "FAIL ") << r.suite << '.' << ch.name << " measured="
                      << format_real(ch.measured) << " tolerance=" << format_real(ch.tolerance) << '\n';
        if (!r.passed) std::cout << "counterexample " << r.suite << ": " << r.counterexample.dump() << '\n';
        all = all && r.passed;
        reports.push_back(to_json(r));
    }
    auto f = open_out(c, "verify.json");
    f << nlohmann::json{{"passed", all}, {"suites", reports}}.dump(2) << '\n';
    announce(c, "verify.json");
    return all ? ok : verify_failed;
}

int cmd_figures(const Common& c, const SweepFlags& s, const AnalyticsFlags& a) {
    const SystemConfig cfg = need_config(c);
    {
        const AnalyticsGrid g = analytics_grid(a, cfg);
        auto f = open_out(c, "fig2.csv");
        write_analytics_csv(f, g, analytics_table(g));
        announce(c, "fig2.csv");
    }
    {
        const Router router(cfg);
        auto f = open_out(c, "fig3.csv");
        write_tradeoff_csv(f, tradeoff_table(router));
        announce(c, "fig3.csv");
    }
    const SweepResult r = run_sweep(cfg, c, s);
    auto f = open_out(c, "fig4.csv");
    write_sweep_csv(f, s.experiment.empty() ? "fig4" : s.experiment, r);
    announce(c, "fig4.csv");
    return ok;
}

void add_common(CLI::App& app, Common& c) {
    app.add_option("--config", c.config, "JSON config file");
    app.add_option("--out", c.out, "Output directory")->capture_default_str();
    app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
    app.add_option("--set", c.overrides, "Config override key=value (dotted path), repeatable")->take_all();
    app.add_option_function<std::size_t>("--trials", [&c](std::size_t n) { c.trials = n; },
                                         "Trials (simulate, sweep, figures) or scenarios (verify)");
    app.add_option("--parallel", c.parallel, "Threads: 1 serial, 0 OpenMP default")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-aware routing of reasoning tasks under stochastic harvest"};
    app.require_subcommand(1);
    Common common;
    SweepFlags sweep;
    AnalyticsFlags analytics;
    double sim_error = -1.0;
    std::string sim_mode = "lumped";
    std::vector<std::string> suites;

    auto* simulate = app.add_subcommand("simulate", "Run independent trials at one prediction error");
    auto* sweep_cmd = app.add_subcommand("sweep", "Mean deficit versus horizon across prediction errors");
    auto* analytics_cmd = app.add_subcommand("analytics", "Deviation from drift-only scaling over a kappa grid");
    auto* tradeoff = app.add_subcommand("tradeoff", "Per-task energy and latency on every model");
    auto* verify = app.add_subcommand("verify", "Run self-check suites");
    auto* figures = app.add_subcommand("figures", "Write fig2.csv, fig3.csv and fig4.csv");
    for (auto* sub : {simulate, sweep_cmd, analytics_cmd, tradeoff, verify, figures}) add_common(*sub, common);

    simulate->add_option("--error", sim_error, "Prediction error (default: config prediction_error)");
    simulate->add_option("--mode", sim_mode, "Consumption process")
        ->check(CLI::IsMember({"lumped", "distributed"}))
        ->capture_default_str();
    for (auto* sub : {sweep_cmd, figures}) {
        sub->add_option("--errors", sweep.errors, "Prediction errors")->delimiter(',')->capture_default_str();
        sub->add_option("--checkpoints", sweep.checkpoints, "Geometric checkpoints on [100, horizon]")
            ->check(CLI::Range(8, 100000))
            ->capture_default_str();
        sub->add_option("--lambda", sweep.lambda, "BIC penalty weight")->capture_default_str();
        sub->add_option("--experiment", sweep.experiment, "Experiment id written to the CSV");
    }
    for (auto* sub : {analytics_cmd, figures}) {
        sub->add_option_function<double>("--sigma", [&](double v) { analytics.sigma = v; },
                                         "Diffusion scale (default: sigma_B of the config)");
        sub->add_option_function<double>("--horizon", [&](double v) { analytics.horizon = v; },
                                         "Horizon T (default: config horizon)");
        sub->add_option("--kappa-min", analytics.kappa_min)->capture_default_str();
        sub->add_option("--kappa-max", analytics.kappa_max)->capture_default_str();
        sub->add_option("--points", analytics.points)->check(CLI::Range(2, 1000000))->capture_default_str();
    }
    verify->add_option("--suite", suites, "Suite name, repeatable (default: all)")
        ->check(CLI::IsMember(verify_suites()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return invalid;
    }

    try {
        if (common.parallel < 0) throw ValidationError("--parallel", "must be >= 0");
        if (*simulate) return cmd_simulate(common, sim_error, sim_mode);
        if (*sweep_cmd) return cmd_sweep(common, sweep);
        if (*analytics_cmd) return cmd_analytics(common, analytics);
        if (*tradeoff) return cmd_tradeoff(common);
        if (*verify) return cmd_verify(common, suites);
        if (*figures) return cmd_figures(common, sweep, analytics);
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return invalid;
    } catch (const InfeasibleTask& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return infeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
    return failure;
}
