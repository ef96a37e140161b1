#pragma once

// Training-compute loss, model capability, and the chain-of-thought success
// model built on the regularized incomplete beta function.

#include "ecoroute/core.hpp"

namespace ecoroute {

/// Per-skill success rate of a model on a task, plus the task's skill structure.
struct CapabilityParams {
    double success_rate = 0.0;  // in [0,1]
    int skills = 1;
    double tokens_per_skill = 1.0;
};

/// Compute-optimal pretraining loss of a model with `params` parameters.
double chinchilla_loss(double params, const ScalingFit& fit);

/// Sigmoid capability of a model of size `params` on a task of difficulty `difficulty`.
double capability(double difficulty, double params, const ScalingFit& fit);

/// Regularized incomplete beta function I_x(a, b), accurate to about 1e-14
/// absolute across the parameter ranges the success model produces.
double reg_inc_beta(double x, double a, double b);

/// Probability that `tokens` tokens suffice to chain all skills:
/// I_p(m, tokens/omega - m + 1), and 0 when the second shape is not positive.
double success_prob(const CapabilityParams& params, double tokens);

/// Smallest token budget whose success probability reaches 1 - tolerance.
/// Throws InfeasibleTask when the success rate is zero or the budget would
/// exceed `max_token_budget`.
double min_token_budget(const CapabilityParams& params, double tolerance);

inline constexpr double max_token_budget = 1e12;

/// Capability parameters of `model` on `task`.
CapabilityParams capability_params(const TaskDescriptor& task, const ModelProfile& model,
                                   const ScalingFit& fit);

}  // namespace ecoroute
