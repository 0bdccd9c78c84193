// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <string>

#include "euler_product.hpp"
#include "frobenius.hpp"
#include "groups.hpp"
#include "necklace_poly.hpp"
#include "poly.hpp"

namespace necklace {

using json = nlohmann::json;

// Wire formats. Coefficients and other unbounded integers travel as decimal
// strings ("num" or "num/den") so values never squeeze through a 64-bit
// JSON number.

inline json poly_to_json(const Poly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back(json::array({e, rat_to_string(c)}));
    return json{{"terms", terms}};
}

inline Poly poly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw std::invalid_argument("polynomial JSON must be {\"terms\": [[exp, \"coef\"], ...]}");
    Poly p;
    for (const auto& t : j["terms"]) {
        if (!t.is_array() || t.size() != 2)
            throw std::invalid_argument("polynomial term must be [exponent, \"coefficient\"]");
        long long e = t[0].get<long long>();
        p.add_term(e, rat_from_string(t[1].get<std::string>()));
    }
    return p;
}

inline json frob_to_json(const FrobElt& a) {
    json out = json::array();
    for (const auto& [k, c] : a.terms()) out.push_back(json::array({k, c.str()}));
    return out;
}

inline json series_to_json(const std::vector<Poly>& polys) {
    json out = json::array();
    for (const Poly& p : polys) out.push_back(poly_to_json(p));
    return out;
}

inline std::vector<Poly> series_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("series JSON must be an array of polynomials");
    std::vector<Poly> out;
    for (const auto& e : j) out.push_back(poly_from_json(e));
    return out;
}

inline json report_to_json(const CycloFactorReport& r) {
    return json{{"d", r.d},
                {"factor_ms", r.factor_ms},
                {"xm_minus", r.xm_minus},
                {"xm_plus", r.xm_plus},
                {"cofactor_degree", r.cofactor_degree},
                {"has_x_factor", r.has_x_factor}};
}

/// Cayley-table input: {"order": n, "table": [[...]], "name": "..."} with
/// 0-based ids, table[g][h] = g*h, identity at id 0.
inline FiniteGroup group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("table"))
        throw std::invalid_argument("group JSON must have \"order\" and \"table\"");
    int n = j["order"].get<int>();
    std::vector<std::vector<int>> table = j["table"].get<std::vector<std::vector<int>>>();
    if (static_cast<int>(table.size()) != n)
        throw std::invalid_argument("group JSON: table size does not match order");
    return FiniteGroup(std::move(table), j.value("name", std::string{}));
}

}  // namespace necklace
