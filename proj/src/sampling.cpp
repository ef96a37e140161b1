#include "ecoroute/sampling.hpp"

#include <algorithm>
#include <random>

namespace ecoroute {

ArrivalStream sample_arrivals(const ArrivalModel& model, Slot horizon, Rng& rng) {
    if (horizon < 1) throw DomainError("sample_arrivals: horizon must be >= 1");
    std::vector<double> cumulative;
    cumulative.reserve(model.catalog.size());
    double acc = 0.0;
    for (const auto& e : model.catalog) cumulative.push_back(acc += e.weight);

    ArrivalStream out;
    out.offsets.reserve(static_cast<std::size_t>(horizon) + 1);
    out.kinds.reserve(static_cast<std::size_t>(static_cast<double>(horizon) * model.rate * 1.1) + 16);
    std::vector<std::uint32_t> slot;
    if (model.rate <= 0.0 || model.catalog.empty()) {
        for (Slot t = 0; t < horizon; ++t) out.push_slot({});
        return out;
    }
    std::poisson_distribution<int> count(model.rate);
    for (Slot t = 0; t < horizon; ++t) {
        slot.clear();
        for (int k = count(rng); k > 0; --k) {
            const double u = uniform01(rng) * acc;
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                                   cumulative.size() - 1);
            slot.push_back(static_cast<std::uint32_t>(idx));
        }
        out.push_slot(slot);
    }
    return out;
}

std::vector<double> sample_harvest(const HarvestModel& model, Slot horizon, Rng& rng) {
    if (horizon < 1) throw DomainError("sample_harvest: horizon must be >= 1");
    std::vector<double> r(static_cast<std::size_t>(horizon), model.mean);
    if (model.kind == HarvestKind::constant) return r;
    if (!(model.mean > 0.0 && model.variance > 0.0))
        throw ValidationError("harvest", "gamma harvest needs mean > 0 and variance > 0");
    std::gamma_distribution<double> gamma(model.gamma_shape(), model.gamma_scale());
    for (auto& x : r) x = gamma(rng);
    return r;
}

}  // namespace ecoroute
