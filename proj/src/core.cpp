#include "ecoroute/core.hpp"

#include <cmath>
#include <string>

namespace ecoroute {

namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }
bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

void require_positive(double v, const std::string& path) {
    if (!finite_positive(v)) throw ValidationError(path, "must be finite and > 0");
}

void require_nonnegative(double v, const std::string& path) {
    if (!finite_nonnegative(v)) throw ValidationError(path, "must be finite and >= 0");
}

std::string indexed(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

}  // namespace

ScalingFit ScalingFit::from_hoffmann(double A, double B, double alpha, double beta, double E,
                                     double steepness, double tokens_per_skill) {
    require_positive(A, "A");
    require_positive(B, "B");
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    // B only enters through the compute-optimal data allocation, which the
    // closed form below already folds into A(1 + alpha/beta).
    ScalingFit fit;
    fit.irreducible_loss = E;
    fit.loss_exponent = alpha;
    fit.loss_scale = A * (1.0 + alpha / beta);
    fit.steepness = steepness;
    fit.tokens_per_skill = tokens_per_skill;
    return fit;
}

ModelProfile derive_coefficients(const ModelDims& dims, const HardwareSpec& hw) {
    require_positive(dims.params, "params");
    if (dims.layers <= 0) throw ValidationError("layers", "must be > 0");
    if (dims.attention_dim <= 0) throw ValidationError("attention_dim", "must be > 0");
    require_nonnegative(hw.memory_energy, "memory_energy");
    require_nonnegative(hw.compute_energy, "compute_energy");
    require_positive(hw.bandwidth, "bandwidth");
    require_positive(hw.throughput, "throughput");

    const double attn = static_cast<double>(dims.layers) * static_cast<double>(dims.attention_dim);
    ModelProfile m;
    m.dims = dims;
    m.energy_per_token = (hw.memory_energy + 2.0 * hw.compute_energy) * dims.params;
    m.energy_per_context = hw.compute_energy * attn;
    m.time_per_token = dims.params / hw.bandwidth + 2.0 * dims.params / hw.throughput;
    m.time_per_context = attn / hw.throughput;
    return m;
}

SystemConfig validate_config(SystemConfig c) {
    require_positive(c.hardware.memory_energy, "hardware.memory_energy");
    require_positive(c.hardware.compute_energy, "hardware.compute_energy");
    require_positive(c.hardware.bandwidth, "hardware.bandwidth");
    require_positive(c.hardware.throughput, "hardware.throughput");

    if (c.models.empty()) throw ValidationError("models", "at least one model is required");
    for (std::size_t i = 0; i < c.models.size(); ++i) {
        const std::string path = indexed("models", i);
        const ModelDims& d = c.models[i].dims;
        try {
            // Stored coefficients are always the recomputed ones.
            c.models[i] = derive_coefficients(d, c.hardware);
        } catch (const ValidationError& e) {
            throw ValidationError(path + "." + e.path(), "must be > 0");
        }
    }

    const ScalingFit& s = c.scaling;
    if (!std::isfinite(s.irreducible_loss)) throw ValidationError("scaling.irreducible_loss", "must be finite");
    require_positive(s.loss_scale, "scaling.loss_scale");
    require_positive(s.loss_exponent, "scaling.loss_exponent");
    require_positive(s.steepness, "scaling.steepness");
    require_positive(s.tokens_per_skill, "scaling.tokens_per_skill");

    require_positive(c.arrivals.rate, "arrivals.rate");
    if (c.arrivals.catalog.empty()) throw ValidationError("arrivals.catalog", "must be non-empty");
    double total_weight = 0.0;
    for (std::size_t i = 0; i < c.arrivals.catalog.size(); ++i) {
        const std::string path = indexed("arrivals.catalog", i);
        const CatalogEntry& e = c.arrivals.catalog[i];
        require_positive(e.descriptor.difficulty, path + ".difficulty");
        if (e.descriptor.skills < 1) throw ValidationError(path + ".skills", "must be >= 1");
        if (e.requirement.deadline < 1) throw ValidationError(path + ".deadline", "must be >= 1 slot");
        const double eps = e.requirement.tolerance;
        if (!(std::isfinite(eps) && eps > 0.0 && eps < 1.0))
            throw ValidationError(path + ".tolerance", "tolerance must lie in the open interval (0,1)");
        require_nonnegative(e.weight, path + ".weight");
        total_weight += e.weight;
    }
    if (std::abs(total_weight - 1.0) > 1e-6)
        throw ValidationError("arrivals.catalog", "weights must sum to 1 (got " + std::to_string(total_weight) + ")");
    for (auto& e : c.arrivals.catalog) e.weight /= total_weight;

    require_nonnegative(c.harvest.mean, "harvest.mean");
    require_nonnegative(c.harvest.variance, "harvest.variance");
    if (c.harvest.kind == HarvestKind::gamma) {
        if (c.harvest.variance == 0.0)
            throw ValidationError("harvest.variance",
                                  "gamma harvest needs variance > 0; use kind=constant for a deterministic supply");
        require_positive(c.harvest.mean, "harvest.mean");
    }

    require_positive(c.slot_seconds, "slot_seconds");
    if (c.horizon < 1) throw ValidationError("horizon", "must be >= 1 slot");
    require_nonnegative(c.initial_battery, "initial_battery");
    if (!(c.prediction_error >= 0.0 && c.prediction_error <= 1.0))
        throw ValidationError("prediction_error", "must lie in [0,1]");
    require_nonnegative(c.dispatcher_energy, "dispatcher_energy");
    if (c.dispatcher_latency < 0) throw ValidationError("dispatcher_latency", "must be >= 0");
    return c;
}

TaskInstance make_task(const ArrivalModel& arrivals, std::size_t index, Slot arrival) {
    const CatalogEntry& e = arrivals.catalog.at(index);
    TaskInstance t;
    t.descriptor = e.descriptor;
    t.requirement = e.requirement;
    t.arrival = arrival;
    t.catalog_index = index;
    return t;
}

}  // namespace ecoroute
