#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ecoroute/kernels.hpp"
#include "ecoroute/sampling.hpp"
#include "support.hpp"

using namespace ecoroute;

TEST_CASE("geometric checkpoints") {
    const auto c = geometric_checkpoints(100, 10000, 40);
    CHECK(c.front() == 100);
    CHECK(c.back() == 10000);
    CHECK(c.size() == 40u);
    for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] > c[i - 1]);
    CHECK(geometric_checkpoints(1, 5, 40).size() == 5u);
}

TEST_CASE("gamma harvest sample moments") {
    const HarvestModel h{HarvestKind::gamma, 593.5, 4e5};
    Rng rng = make_stream(5, 0);
    const auto x = sample_harvest(h, 1000000, rng);
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    CHECK(mean == doctest::Approx(593.5).epsilon(0.01));
    CHECK(ss / (x.size() - 1) == doctest::Approx(4e5).epsilon(0.01));
    Rng rng2 = make_stream(5, 0);
    const auto c = sample_harvest({HarvestKind::constant, 7.0, 0.0}, 10, rng2);
    for (double v : c) CHECK(v == 7.0);
}

TEST_CASE("arrival counts are Poisson with catalog frequencies") {
    ArrivalModel m = reference_config().arrivals;
    m.rate = 2.5;
    Rng rng = make_stream(6, 0);
    const ArrivalStream a = sample_arrivals(m, 200000, rng);
    CHECK(a.horizon() == 200000);
    const double mean = static_cast<double>(a.total()) / 200000;
    CHECK(mean == doctest::Approx(2.5).epsilon(0.01));
    std::vector<double> counts(m.catalog.size());
    for (auto k : a.kinds) counts[k] += 1;
    for (double c : counts) CHECK(c / a.total() == doctest::Approx(0.1).epsilon(0.03));
}

TEST_CASE("a trial is a pure function of its seed") {
    TrialOptions o;
    o.checkpoints = geometric_checkpoints(10, 2000, 12);
    SystemConfig short_cfg = reference_config();
    short_cfg.horizon = 2000;
    const Router r2(short_cfg);
    const TrialResult a = run_trial(r2, 0.1, 99, o), b = run_trial(r2, 0.1, 99, o);
    CHECK(a.deficits == b.deficits);
    CHECK(a.misroutes == b.misroutes);
    CHECK(a.excess == b.excess);
    for (std::size_t i = 1; i < a.deficits.size(); ++i) CHECK(a.deficits[i] >= a.deficits[i - 1]);
    CHECK(a.final_deficit >= a.deficits.back());
}

TEST_CASE("harvest far above demand never runs a deficit") {
    SystemConfig cfg = reference_config();
    cfg.horizon = 500;
    cfg.harvest = {HarvestKind::constant, 1e6, 0.0};
    TrialOptions o;
    o.checkpoints = {500};
    CHECK(run_trial(cfg, 0.0, 1, o).final_deficit == 0.0);
}

TEST_CASE("zero error never misroutes") {
    SystemConfig cfg = reference_config();
    cfg.horizon = 3000;
    TrialOptions o;
    o.checkpoints = {3000};
    const TrialResult r = run_trial(cfg, 0.0, 4, o);
    CHECK(r.misroutes == 0u);
    CHECK(r.excess == 0.0);
    CHECK(r.tasks > 2500u);
}

TEST_CASE("distributed trials never need more auxiliary energy than lumped") {
    SystemConfig cfg = reference_config();
    cfg.horizon = 2000;
    const Router router(cfg);
    TrialOptions lumped, spread;
    lumped.checkpoints = spread.checkpoints = geometric_checkpoints(10, 2000, 10);
    spread.mode = ConsumptionMode::distributed;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto a = run_trial(router, 0.2, s, lumped), b = run_trial(router, 0.2, s, spread);
        for (std::size_t i = 0; i < a.deficits.size(); ++i) CHECK(b.deficits[i] <= a.deficits[i] + 1e-9);
    }
}

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
    SystemConfig cfg = reference_config();
    cfg.horizon = 1000;
    const Router router(cfg);
    TrialOptions o;
    o.checkpoints = geometric_checkpoints(10, 1000, 10);
    const auto s = run_trials(router, 0.1, 3, 24, o, Execution::serial);
    const auto p = run_trials(router, 0.1, 3, 24, o, Execution::parallel, 3);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i].deficits == p[i].deficits);
        CHECK(s[i].seed == p[i].seed);
    }
    CHECK(random_walk_deficits({-0.01, 1.0}, 500, 64, 2, Execution::serial) ==
          random_walk_deficits({-0.01, 1.0}, 500, 64, 2, Execution::parallel, 4));
    CHECK(lumped_totals(router, 100, 50, 2, Execution::serial) == lumped_totals(router, 100, 50, 2, Execution::parallel, 2));
}

TEST_CASE("small sweep produces ordered, populated aggregates") {
    SystemConfig cfg = reference_config();
    cfg.horizon = 3000;
    SweepOptions o;
    o.errors = {0.0, 0.2};
    o.trials = 40;
    o.execution = Execution::serial;
    const SweepResult r = sweep_error(cfg, o);
    REQUIRE(r.points.size() == 2u);
    for (const auto& p : r.points) {
        CHECK(p.trials == 40u);
        CHECK(p.checkpoints.size() == 40u);
        for (double s : p.stderr_) CHECK(s >= 0.0);
    }
    CHECK(r.points[0].misroute_rate == 0.0);
    CHECK(r.points[1].misroute_rate > 0.1);
    CHECK(r.points[1].measured_drift < 0.0);
    // common random numbers: more misrouting means at least as much consumption, pathwise
    CHECK(r.points[1].mean.back() >= r.points[0].mean.back());
}

TEST_CASE("aggregate mean and standard error") {
    std::vector<TrialResult> t(3);
    t[0].deficits = {1, 2};
    t[1].deficits = {3, 2};
    t[2].deficits = {5, 2};
    std::vector<double> mean, se;
    aggregate(t, mean, se);
    CHECK(mean == std::vector<double>{3, 2});
    CHECK(se[0] == doctest::Approx(2 / std::sqrt(3.0)));
    CHECK(se[1] == 0.0);
}

TEST_CASE("reference sweep: sqrt coefficient, error ordering, zero-error verdict") {
    SweepOptions o;
    o.trials = 1000;
    const SweepResult r = sweep_error(reference_config(), o);
    REQUIRE(r.points.size() == 4u);
    const double coefficient = std::sqrt(r.moments.variance) * std::sqrt(2 / 3.14159265358979323846);
    CHECK(r.points[0].regime.verdict == RegimeVerdict::pure_sqrt);
    CHECK(r.points[0].regime.pure.slope == doctest::Approx(coefficient).epsilon(0.10));
    for (std::size_t i = 1; i < r.points.size(); ++i) {
        CHECK(r.points[i].mean.back() > r.points[i - 1].mean.back());
        CHECK(r.points[i].measured_drift < r.points[i - 1].measured_drift);
    }
}

TEST_CASE("zero-error sweeps read as pure square-root on at least 90% of replications") {
    SweepOptions o;
    o.errors = {0.0};
    o.trials = 100;
    int pure = 0;
    const int replications = 20;
    for (int k = 0; k < replications; ++k) {
        o.seed = 1000 + static_cast<std::uint64_t>(k);
        pure += sweep_error(reference_config(), o).points[0].regime.verdict == RegimeVerdict::pure_sqrt;
    }
    CHECK(pure >= 18);
}
