#pragma once

// JSON form of a memory interface: an array of {"alpha": a, "beta": b}
// objects ordered from the diagonal outward, ending with the tail endpoint
// clamped to the support box.

#include "preisach/memory_interface.hpp"

#include <json.hpp>

namespace preisach {

inline nlohmann::json interface_to_json(const MemoryInterface& iface) {
    auto arr = nlohmann::json::array();
    for (const auto& p : iface.polyline()) arr.push_back({{"alpha", p.alpha}, {"beta", p.beta}});
    return arr;
}

inline MemoryInterface interface_from_json(const nlohmann::json& j, const Box& support_box) {
    if (!j.is_array()) throw ConfigError("interface JSON must be an array of corner objects");
    std::vector<PlanePoint> pts;
    pts.reserve(j.size());
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("alpha") || !item.contains("beta"))
            throw ConfigError("interface corner needs numeric \"alpha\" and \"beta\"");
        pts.push_back({item.at("alpha").get<double>(), item.at("beta").get<double>()});
    }
    return MemoryInterface::from_corners(std::move(pts), support_box);
}

}  // namespace preisach
