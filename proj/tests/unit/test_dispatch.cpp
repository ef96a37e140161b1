#include <doctest.h>

#include <numeric>

#include "ecoroute/dispatch.hpp"
#include "ecoroute/sampling.hpp"
#include "support.hpp"

using namespace ecoroute;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("minimum service of the endpoint tasks") {
    const auto& cfg = reference_config();
    const auto first = make_task(cfg.arrivals, 0, 0), last = make_task(cfg.arrivals, 9, 0);
    CHECK(min_service_time(first, 0, cfg).slots == 34);
    CHECK(min_service_time(first, 1, cfg).slots == 24);
    CHECK(min_service_time(last, 0, cfg).slots == 9);
    CHECK(min_service_time(last, 1, cfg).slots == 11);
    CHECK(min_service_time(first, 0, cfg).energy == doctest::Approx(1022.645103).epsilon(1e-8));
    CHECK(min_service_time(last, 1, cfg).energy == doctest::Approx(428.4948253).epsilon(1e-8));
}

TEST_CASE("strict deadline leaves only the large model") {
    const auto& cfg = reference_config();
    const Router router(cfg);
    const TaskInstance t = make_task(cfg.arrivals, 4, 100);
    CHECK(router.feasible_set(t, 100) == std::vector<std::size_t>{1});
    CHECK(feasible_set(t, 100, cfg) == std::vector<std::size_t>{1});
    CHECK(router.route_lb(t, 100).model == 1);
    // one slot later nothing fits
    CHECK(router.feasible_set(t, 101).empty());
    CHECK_THROWS_AS(router.route_lb(t, 101), InfeasibleTask);
}

TEST_CASE("lower bound picks the cheaper feasible model") {
    const auto& cfg = reference_config();
    const Router router(cfg);
    CHECK(router.route_lb(make_task(cfg.arrivals, 0, 0), 0).model == 1);  // 946.7 < 1022.6 J
    CHECK(router.route_lb(make_task(cfg.arrivals, 9, 0), 0).model == 0);  // 310.9 < 428.5 J
    CHECK(router.lower_bound_energy(4) == doctest::Approx(652.2213133).epsilon(1e-8));
}

TEST_CASE("default deadline is twice the slowest capable service time") {
    const auto& cfg = reference_config();
    CHECK(cfg.arrivals.catalog[1].requirement.deadline == 2 * 29);
    CHECK(cfg.arrivals.catalog[8].requirement.deadline == 2 * 12);
}

TEST_CASE("noisy routing with certain error always misroutes when it can") {
    const auto& cfg = reference_config();
    const Router router(cfg);
    Rng rng = make_stream(7, 0);
    for (std::size_t i = 0; i < cfg.arrivals.catalog.size(); ++i) {
        const TaskInstance t = make_task(cfg.arrivals, i, 0);
        const Allocation lb = router.route_lb(t, 0);
        const Allocation a = router.route_noisy(t, 0, 1.0, rng);
        if (i == 4) {
            CHECK_FALSE(a.misrouted);
            CHECK(a.excess == 0.0);
        } else {
            CHECK(a.misrouted);
            CHECK(a.model != lb.model);
            CHECK(a.excess == doctest::Approx(a.energy - lb.energy));
            CHECK(a.excess > 0.0);
        }
    }
}

TEST_CASE("noisy routing never violates the deadline or tolerance") {
    const auto& cfg = reference_config();
    const Router router(cfg);
    Rng rng = make_stream(8, 0);
    for (int k = 0; k < 2000; ++k) {
        const std::size_t i = rng() % cfg.arrivals.catalog.size();
        const TaskInstance t = make_task(cfg.arrivals, i, 0);
        const Allocation a = router.route_noisy(t, 0, 0.5, rng);
        CHECK(a.slots <= t.requirement.deadline);
        CHECK(router.quotes(i)[a.model].capable);
    }
}

TEST_CASE("lumped and distributed series carry the same energy") {
    const auto& cfg = reference_config();
    const Router router(cfg);
    Rng rng = make_stream(9, 0);
    const Slot horizon = 500;
    const ArrivalStream arrivals = sample_arrivals(cfg.arrivals, horizon, rng);
    const auto allocs = route_arrivals(arrivals, cfg.arrivals, [&](const TaskInstance& t, Slot now) { return router.route_lb(t, now); });
    CHECK(allocs.size() == arrivals.total());
    const auto lumped = lumped_consumption(allocs, horizon);
    const auto spread = distributed_consumption(allocs, horizon + 64);
    CHECK(lumped.per_slot.size() == static_cast<std::size_t>(horizon));
    double want = 0.0;
    for (const auto& a : allocs) want += a.energy;
    CHECK(sum(lumped.per_slot) == doctest::Approx(want).epsilon(1e-12));
    CHECK(sum(spread.per_slot) == doctest::Approx(want).epsilon(1e-12));
    // cumulative distributed consumption never runs ahead of lumped
    double cl = 0.0, cd = 0.0;
    for (Slot t = 0; t < horizon; ++t) {
        cl += lumped.per_slot[static_cast<std::size_t>(t)];
        cd += spread.per_slot[static_cast<std::size_t>(t)];
        CHECK(cd <= cl * (1 + 1e-12));
    }
}

TEST_CASE("dispatcher energy and latency") {
    SystemConfig cfg = reference_config();
    cfg.dispatcher_energy = 2.5;
    cfg.dispatcher_latency = 3;
    const Router router(cfg);
    const TaskInstance t = make_task(cfg.arrivals, 9, 10);
    const Allocation a = router.route_lb(t, 10);
    CHECK(a.overhead == 2.5);
    CHECK(slack(t, 10, cfg) == t.requirement.deadline - 3);
    const std::vector<Allocation> one{a};
    const auto lumped = lumped_consumption(one, 40);
    CHECK(lumped.per_slot[10] == doctest::Approx(a.energy + 2.5));
    const auto spread = distributed_consumption(one, 40, 3);
    CHECK(spread.per_slot[10] == 2.5);
    CHECK(spread.per_slot[11] == 0.0);
    CHECK(spread.per_slot[13] == doctest::Approx(a.profile->per_slot[0]));
    // the strict task loses its only feasible model to the latency
    CHECK(router.feasible_set(make_task(cfg.arrivals, 4, 0), 0).empty());
}

TEST_CASE("lower-bound moments flag entries no model can serve") {
    SystemConfig cfg = reference_config();
    cfg.arrivals.catalog[2].requirement.deadline = 5;
    cfg.arrivals.catalog[7].requirement.deadline = 3;
    try {
        lower_bound_moments(cfg.arrivals, cfg);
        FAIL("expected InfeasibleTask");
    } catch (const InfeasibleTask& e) {
        const std::string msg = e.what();
        CHECK(msg.find("catalog=2") != std::string::npos);
        CHECK(msg.find("catalog=7") != std::string::npos);
    }
}
