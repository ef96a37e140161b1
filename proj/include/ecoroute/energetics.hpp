#pragma once

// Token-level energy and latency of autoregressive generation, and the
// discretization of a continuous generation run into per-slot energy.

#include <cstddef>
#include <vector>

#include "ecoroute/core.hpp"

namespace ecoroute {

struct TokenCost {
    double energy = 0.0;  // J / token
    double time = 0.0;    // s / token
};

/// Marginal cost of one token generated at context length `context_len`.
TokenCost per_token(const ModelProfile& model, double context_len);

/// Energy of generating `tokens` tokens from an empty context (quadratic in tokens).
double total_energy(const ModelProfile& model, double tokens);
/// Wall time of generating `tokens` tokens from an empty context.
double total_time(const ModelProfile& model, double tokens);

/// Inverse of total_time: tokens generated after `elapsed` seconds.
double invert_time(const ModelProfile& model, double elapsed);

/// Energy drawn per slot by one task from dispatch until completion.
struct ExpenditureProfile {
    std::size_t model = 0;
    double tokens = 0.0;
    double energy = 0.0;   // J, equals the sum of per_slot
    double seconds = 0.0;  // continuous completion time
    Slot slots = 0;        // ceil(seconds / slot length)
    std::vector<double> per_slot;
};

/// Samples cumulative energy at slot boundaries (the last boundary clamped
/// to the completion time) and differences consecutive samples.
ExpenditureProfile discretize_profile(const ModelProfile& model, std::size_t model_index,
                                      double tokens, double slot_seconds);

/// Number of whole slots needed to cover `seconds`.
Slot slots_for(double seconds, double slot_seconds);

}  // namespace ecoroute
