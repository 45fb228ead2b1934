#include "scrip/json_io.hpp"

#include <cmath>
#include <fstream>

namespace scrip {

using nlohmann::json;

namespace {

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw SpecError(std::string("missing or non-numeric field '") + key + "'");
    return j[key].get<double>();
}

Rational parse_money(const json& j) {
    if (!j.contains("m")) throw SpecError("missing field 'm'");
    const json& m = j["m"];
    if (m.is_object()) {
        if (!m.contains("num") || !m.contains("den") || !m["num"].is_number_integer() ||
            !m["den"].is_number_integer())
            throw SpecError("'m' object must have integer fields 'num' and 'den'");
        return Rational(m["num"].get<std::int64_t>(), m["den"].get<std::int64_t>());
    }
    if (m.is_number_integer()) return Rational(m.get<std::int64_t>(), 1);
    if (m.is_number_float())
        throw SpecError("floating-point 'm' rejected; supply {\"num\":..., \"den\":...}");
    throw SpecError("'m' must be an integer or a {num, den} object");
}

}  // namespace

json game_spec_to_json(const GameSpec& spec) {
    json types = json::array();
    for (const auto& t : spec.types()) {
        types.push_back({{"alpha", t.alpha},
                         {"beta", t.beta},
                         {"gamma", t.gamma},
                         {"delta", t.delta},
                         {"rho", t.rho},
                         {"chi", t.chi}});
    }
    return json{{"types", std::move(types)},
                {"fractions", spec.fractions()},
                {"h", spec.h()},
                {"m", {{"num", spec.m().num}, {"den", spec.m().den}}},
                {"n", spec.n()}};
}

GameSpec game_spec_from_json(const json& j) {
    if (!j.is_object()) throw SpecError("game spec must be a JSON object");
    if (!j.contains("types") || !j["types"].is_array())
        throw SpecError("missing array field 'types'");
    if (!j.contains("fractions") || !j["fractions"].is_array())
        throw SpecError("missing array field 'fractions'");
    if (!j.contains("h") || !j["h"].is_number_integer())
        throw SpecError("missing integer field 'h'");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw SpecError("missing integer field 'n'");

    std::vector<AgentType> types;
    for (const auto& tj : j["types"]) {
        AgentType t;
        t.alpha = require_number(tj, "alpha");
        t.beta = require_number(tj, "beta");
        t.gamma = require_number(tj, "gamma");
        t.delta = require_number(tj, "delta");
        t.rho = require_number(tj, "rho");
        t.chi = require_number(tj, "chi");
        types.push_back(t);
    }
    std::vector<double> fractions = j["fractions"].get<std::vector<double>>();

    return build_game_spec(std::move(types), fractions, j["h"].get<std::int64_t>(),
                           parse_money(j), j["n"].get<std::int64_t>());
}

GameSpec load_game_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open game spec file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SpecError("malformed JSON in " + path + ": " + e.what());
    }
    return game_spec_from_json(j);
}

}  // namespace scrip
