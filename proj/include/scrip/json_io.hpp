#pragma once

#include "scrip/model.hpp"

#include <json.hpp>

#include <string>

namespace scrip {

// GameSpec document: {"types": [{alpha,beta,gamma,delta,rho,chi}...],
// "fractions": [...], "h": int, "m": {"num": int, "den": int}, "n": int}.
// m may also be given as a plain integer; non-integral numeric m is rejected
// so the m*h integrality check stays exact.
nlohmann::json game_spec_to_json(const GameSpec& spec);
GameSpec game_spec_from_json(const nlohmann::json& j);

GameSpec load_game_spec(const std::string& path);

}  // namespace scrip
