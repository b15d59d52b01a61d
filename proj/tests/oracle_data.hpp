#pragma once

#include "rm2kit/poly.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace rm2::testing {

inline nlohmann::json load_oracle(const std::string& name) {
    std::ifstream in(std::string(RM2_ORACLE_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing oracle file " + name);
    return nlohmann::json::parse(in);
}

inline Rat rat(const nlohmann::json& v) { return parse_rat(v.get<std::string>()); }

inline QPoly poly(const nlohmann::json& v) {
    std::vector<Rat> c;
    for (const auto& e : v) c.push_back(rat(e));
    return QPoly(std::move(c));
}

}  // namespace rm2::testing
