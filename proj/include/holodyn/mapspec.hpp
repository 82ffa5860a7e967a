#pragma once

#include <optional>
#include <string>

#include "holodyn/moebius.hpp"
#include "holodyn/rational_map.hpp"

namespace holodyn {

// A parsed --map argument. The mini-grammar, with coefficients highest
// degree first and complex literals written like "a+bi":
//   poly: c_n ... c_0
//   rat: <poly> / <poly>
//   moebius: A B C D
//   lattes-w: g2 g3
//   lattes-sn: k
//   newton: c_n ... c_0
struct ParsedMap {
    std::string text;
    std::string kind;
    RationalMap map;
    std::optional<MoebiusMap> moebius;     // kind == moebius
    std::optional<Polynomial> newton_poly; // kind == newton: the polynomial behind the map
};

ParsedMap parse_map_spec(const std::string& text);

// One complex literal: "2", "-1.5", "i", "-i", "3i", "1+2i", "1e-3-0.5i".
Complex parse_complex(const std::string& token);

} // namespace holodyn
