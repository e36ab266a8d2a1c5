#pragma once

#include <json.hpp>

#include "twinmarket/common/ids.hpp"
#include "twinmarket/common/money.hpp"

namespace nlohmann {

template <class Tag, class Rep>
struct adl_serializer<twinmarket::StrongId<Tag, Rep>> {
    static void to_json(json& j, const twinmarket::StrongId<Tag, Rep>& id) { j = id.value; }
    static void from_json(const json& j, twinmarket::StrongId<Tag, Rep>& id) { id.value = j.get<Rep>(); }
};

// Serialized as a decimal amount; ticks are recovered by rounding.
template <>
struct adl_serializer<twinmarket::Money> {
    static void to_json(json& j, const twinmarket::Money& m) { j = m.to_double(); }
    static void from_json(const json& j, twinmarket::Money& m) {
        m = twinmarket::Money::from_double(j.get<double>());
    }
};

}  // namespace nlohmann

namespace twinmarket {
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;
}  // namespace twinmarket
