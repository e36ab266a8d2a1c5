#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace twinmarket {

/// Thin wrapper that keeps ids of different kinds from mixing.
template <class Tag, class Rep>
struct StrongId {
    Rep value{};

    constexpr StrongId() = default;
    constexpr explicit StrongId(Rep v) : value(v) {}

    friend constexpr auto operator<=>(const StrongId&, const StrongId&) = default;
    friend std::ostream& operator<<(std::ostream& os, const StrongId& id) { return os << id.value; }
};

using AgentId = StrongId<struct AgentIdTag, std::uint32_t>;
using PostId = StrongId<struct PostIdTag, std::uint64_t>;

/// Index code such as "TLEI" or "FSEI".
using AssetId = std::string;

/// Simulation day ordinal.
using Day = std::int32_t;

enum class Side { buy, sell };

inline const char* to_string(Side s) { return s == Side::buy ? "buy" : "sell"; }

}  // namespace twinmarket

template <class Tag, class Rep>
struct std::hash<twinmarket::StrongId<Tag, Rep>> {
    std::size_t operator()(const twinmarket::StrongId<Tag, Rep>& id) const noexcept {
        return std::hash<Rep>{}(id.value);
    }
};
