#pragma once

// Self-checks of the model's identities and limit laws, runnable from the CLI.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecoroute/core.hpp"
#include "ecoroute/harness.hpp"

namespace ecoroute {

struct VerifyCheck {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyReport {
    std::string suite;
    bool passed = true;
    std::vector<VerifyCheck> checks;
    nlohmann::json counterexample;  // first failing case, null when none
};

const std::vector<std::string>& verify_suites();

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t scenarios = 0;  // 0: the suite's default sample size
    Execution execution = Execution::parallel;
    int threads = 0;
};

/// Runs one suite ("thm1", "lumped-dominance", "variance-lemma",
/// "beta-oracle", "donsker", "continuity"). Throws ValidationError for an
/// unknown name.
VerifyReport run_verify(const std::string& suite, const SystemConfig& config, const VerifyOptions& options = {});

nlohmann::json to_json(const VerifyReport& report);

/// I_x(a, b) for integer shapes as a binomial tail sum.
double binomial_beta_oracle(double x, int a, int b);

}  // namespace ecoroute
