#include "ecoroute/energetics.hpp"

#include <algorithm>
#include <cmath>

namespace ecoroute {

TokenCost per_token(const ModelProfile& m, double context_len) {
    if (!(context_len >= 0.0)) throw DomainError("per_token: context length must be >= 0");
    return {m.energy_per_token + 2.0 * m.energy_per_context * context_len,
            m.time_per_token + 2.0 * m.time_per_context * context_len};
}

double total_energy(const ModelProfile& m, double tokens) {
    if (!(tokens >= 0.0)) throw DomainError("total_energy: token count must be >= 0");
    return m.energy_per_token * tokens + m.energy_per_context * tokens * tokens;
}

double total_time(const ModelProfile& m, double tokens) {
    if (!(tokens >= 0.0)) throw DomainError("total_time: token count must be >= 0");
    return m.time_per_token * tokens + m.time_per_context * tokens * tokens;
}

double invert_time(const ModelProfile& m, double elapsed) {
    if (!(elapsed >= 0.0)) throw DomainError("invert_time: elapsed time must be >= 0");
    const double a = m.time_per_token;
    const double b = m.time_per_context;
    if (b == 0.0) return elapsed / a;
    // Rationalized root of b*x^2 + a*x - elapsed = 0; no cancellation when 4*b*elapsed << a^2.
    return 2.0 * elapsed / (a + std::sqrt(a * a + 4.0 * b * elapsed));
}

Slot slots_for(double seconds, double slot_seconds) {
    return static_cast<Slot>(std::ceil(seconds / slot_seconds));
}

ExpenditureProfile discretize_profile(const ModelProfile& m, std::size_t model_index, double tokens,
                                      double slot_seconds) {
    if (!(tokens > 0.0)) throw DomainError("discretize_profile: token budget must be > 0");
    if (!(slot_seconds > 0.0)) throw DomainError("discretize_profile: slot length must be > 0");

    ExpenditureProfile p;
    p.model = model_index;
    p.tokens = tokens;
    p.energy = total_energy(m, tokens);
    p.seconds = total_time(m, tokens);
    p.slots = std::max<Slot>(1, slots_for(p.seconds, slot_seconds));
    p.per_slot.resize(static_cast<std::size_t>(p.slots));

    double previous = 0.0;
    for (Slot u = 1; u <= p.slots; ++u) {
        const double boundary = static_cast<double>(u) * slot_seconds;
        const double cumulative =
            (u == p.slots || boundary >= p.seconds) ? p.energy : total_energy(m, invert_time(m, boundary));
        p.per_slot[static_cast<std::size_t>(u - 1)] = std::max(0.0, cumulative - previous);
        previous = cumulative;
    }
    return p;
}

}  // namespace ecoroute
