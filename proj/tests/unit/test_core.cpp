#include <doctest.h>

#include "ecoroute/core.hpp"
#include "support.hpp"

using namespace ecoroute;

namespace {

HardwareSpec reference_hw() { return {1e-11, 1e-12, 5e12, 2e13}; }

template <class F>
std::string error_path(F&& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        return e.path();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("coefficients of the 1B model") {
    const ModelProfile m = derive_coefficients({"small", 1e9, 48, 2048}, reference_hw());
    CHECK(m.energy_per_token == doctest::Approx(0.012).epsilon(1e-14));
    CHECK(m.energy_per_context == doctest::Approx(9.8304e-8).epsilon(1e-14));
    CHECK(m.time_per_token == doctest::Approx(3e-4).epsilon(1e-14));
    CHECK(m.time_per_context == doctest::Approx(4.9152e-9).epsilon(1e-14));
}

TEST_CASE("coefficients scale linearly in parameters and attention size") {
    const ModelProfile a = derive_coefficients({"a", 1e9, 48, 2048}, reference_hw());
    const ModelProfile b = derive_coefficients({"b", 1e10, 96, 2048}, reference_hw());
    CHECK(b.energy_per_token == doctest::Approx(10 * a.energy_per_token));
    CHECK(b.energy_per_context == doctest::Approx(2 * a.energy_per_context));
}

TEST_CASE("zero compute energy leaves only memory traffic") {
    HardwareSpec hw = reference_hw();
    hw.compute_energy = 0.0;
    const ModelProfile m = derive_coefficients({"m", 1e9, 48, 2048}, hw);
    CHECK(m.energy_per_token == doctest::Approx(1e-2));
    CHECK(m.energy_per_context == 0.0);
}

TEST_CASE("validation names the offending field") {
    SystemConfig c = reference_config();
    c.arrivals.catalog[3].requirement.tolerance = 1.0;
    CHECK(error_path([&] { validate_config(c); }) == "arrivals.catalog[3].tolerance");

    c = reference_config();
    c.hardware.bandwidth = 0.0;
    CHECK(error_path([&] { validate_config(c); }) == "hardware.bandwidth");

    c = reference_config();
    c.arrivals.rate = 0.0;
    CHECK(error_path([&] { validate_config(c); }) == "arrivals.rate");

    c = reference_config();
    c.models[1].dims.params = -1.0;
    CHECK(error_path([&] { validate_config(c); }) == "models[1].params");
}

TEST_CASE("zero harvest variance under the gamma kind is rejected") {
    SystemConfig c = reference_config();
    c.harvest.variance = 0.0;
    CHECK_THROWS_AS(validate_config(c), ValidationError);
    c.harvest.kind = HarvestKind::constant;
    CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("catalog weights are renormalized") {
    SystemConfig c = reference_config();
    for (auto& e : c.arrivals.catalog) e.weight = 0.1 + 1e-8;
    const SystemConfig v = validate_config(c);
    double total = 0.0;
    for (const auto& e : v.arrivals.catalog) total += e.weight;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));

    for (auto& e : c.arrivals.catalog) e.weight = 0.2;
    CHECK(error_path([&] { validate_config(c); }) == "arrivals.catalog");
}

TEST_CASE("gamma harvest moments") {
    const HarvestModel h{HarvestKind::gamma, 593.5, 4e5};
    CHECK(h.gamma_shape() == doctest::Approx(0.8806).epsilon(1e-4));
    CHECK(h.gamma_scale() == doctest::Approx(674.0).epsilon(1e-4));
}

TEST_CASE("make_task copies the catalog entry") {
    const auto& c = reference_config();
    const TaskInstance t = make_task(c.arrivals, 4, 12);
    CHECK(t.arrival == 12);
    CHECK(t.requirement.deadline == 17);
    CHECK(t.catalog_index == 4u);
    CHECK(t.descriptor.skills == 50);
}
