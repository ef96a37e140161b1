#pragma once

// Shared domain types: tasks, hardware, hosted models, scaling fit, workload
// and harvest models, and the full system configuration.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecoroute/error.hpp"

namespace ecoroute {

using Slot = std::int64_t;

struct TaskDescriptor {
    double difficulty = 0.0;  // pretraining-loss units
    int skills = 1;           // sequential skills
};

struct Requirement {
    Slot deadline = 1;       // slots
    double tolerance = 0.1;  // in (0,1)
};

struct TaskInstance {
    TaskDescriptor descriptor;
    Requirement requirement;
    Slot arrival = 0;
    std::optional<Slot> dispatch;
    // Index into the arrival catalog when the task was sampled from one.
    std::optional<std::size_t> catalog_index;
};

struct HardwareSpec {
    double memory_energy = 0.0;   // J per parameter access
    double compute_energy = 0.0;  // J per FLOP
    double bandwidth = 0.0;       // parameters / s
    double throughput = 0.0;      // FLOP / s
};

/// Raw architecture of a hosted model, before hardware costs are applied.
struct ModelDims {
    std::string name;
    double params = 0.0;
    int layers = 0;
    int attention_dim = 0;
};

/// Hosted model with per-token energy/latency coefficients.
///
/// Energy per token at context length L is `energy_per_token + 2 *
/// energy_per_context * L`; time per token is `time_per_token + 2 *
/// time_per_context * L`.
struct ModelProfile {
    ModelDims dims;
    double energy_per_token = 0.0;    // J / token
    double energy_per_context = 0.0;  // J / token per context token
    double time_per_token = 0.0;      // s / token
    double time_per_context = 0.0;    // s / token per context token
};

/// Training-compute loss fit plus the capability sigmoid and skill granularity.
struct ScalingFit {
    double irreducible_loss = 0.0;
    double loss_scale = 0.0;     // multiplies N^-exponent
    double loss_exponent = 0.0;
    double steepness = 1.0;      // capability sigmoid slope
    double tokens_per_skill = 1.0;

    /// Builds the fit from Hoffmann-style parameters
    /// L(N, D) = E + A / N^alpha + B / D^beta along the compute-optimal frontier.
    static ScalingFit from_hoffmann(double A, double B, double alpha, double beta, double E,
                                    double steepness, double tokens_per_skill);
};

struct CatalogEntry {
    TaskDescriptor descriptor;
    Requirement requirement;
    double weight = 0.0;
};

struct ArrivalModel {
    double rate = 0.0;  // mean tasks per slot
    std::vector<CatalogEntry> catalog;
};

enum class HarvestKind { constant, gamma };

struct HarvestModel {
    HarvestKind kind = HarvestKind::constant;
    double mean = 0.0;      // J / slot
    double variance = 0.0;  // J^2 / slot

    double gamma_shape() const { return mean * mean / variance; }
    double gamma_scale() const { return variance / mean; }
};

struct SystemConfig {
    HardwareSpec hardware;
    std::vector<ModelProfile> models;
    ScalingFit scaling;
    ArrivalModel arrivals;
    HarvestModel harvest;
    double slot_seconds = 1.0;
    Slot horizon = 1;
    double initial_battery = 0.0;
    double prediction_error = 0.0;
    double dispatcher_energy = 0.0;  // J charged per routed task
    Slot dispatcher_latency = 0;     // slots removed from each task's slack
};

/// Computes the four per-token coefficients from raw dimensions and hardware.
ModelProfile derive_coefficients(const ModelDims& dims, const HardwareSpec& hw);

/// Checks every type invariant and returns a normalized copy: catalog
/// weights renormalized to sum exactly to one and models ordered as given.
/// Deadline defaults and a "critical" harvest mean are resolved by the
/// config loader, which needs the dispatcher.
SystemConfig validate_config(SystemConfig config);

/// Builds the task a catalog entry describes, arriving at `arrival`.
TaskInstance make_task(const ArrivalModel& arrivals, std::size_t index, Slot arrival);

}  // namespace ecoroute
