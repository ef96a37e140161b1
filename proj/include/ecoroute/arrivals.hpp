#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ecoroute/core.hpp"

namespace ecoroute {

/// Tasks arriving in each slot, stored as catalog indices in slot order.
/// Slot t owns kinds[offsets[t] .. offsets[t+1]).
struct ArrivalStream {
    std::vector<std::size_t> offsets{0};
    std::vector<std::uint32_t> kinds;

    Slot horizon() const { return static_cast<Slot>(offsets.size()) - 1; }
    std::size_t total() const { return kinds.size(); }
    std::span<const std::uint32_t> at(Slot t) const {
        const auto i = static_cast<std::size_t>(t);
        return {kinds.data() + offsets[i], offsets[i + 1] - offsets[i]};
    }

    void push_slot(std::span<const std::uint32_t> slot_kinds) {
        kinds.insert(kinds.end(), slot_kinds.begin(), slot_kinds.end());
        offsets.push_back(kinds.size());
    }
};

}  // namespace ecoroute
