#pragma once

#include <json.hpp>

#include "modvertex/charseries.hpp"
#include "modvertex/root_data.hpp"
#include "modvertex/wff.hpp"

namespace modvertex {

using nlohmann::json;

// ---------------------------------------------------------------------------
// FiniteLieData: the data-file format for rank data.  Only sl2 ships, but any
// record validating under validate_lie_data is accepted.
// ---------------------------------------------------------------------------

inline json combo_to_json(const IntCombo& c) {
    json out = json::array();
    for (auto& [k, v] : c) out.push_back(json::array({k, v}));
    return out;
}

inline IntCombo combo_from_json(const json& j) {
    IntCombo c;
    for (auto& t : j) c.emplace_back(t.at(0).get<int>(), t.at(1).get<long long>());
    return c;
}

inline json lie_to_json(const FiniteLieData& d) {
    json j;
    j["name"] = d.name;
    j["rank"] = d.rank;
    j["basis"] = json::array();
    for (auto& b : d.basis) j["basis"].push_back({{"name", b.name}, {"weight", b.weight}});
    j["bracket"] = json::array();
    for (auto& row : d.bracket) {
        json r = json::array();
        for (auto& c : row) r.push_back(combo_to_json(c));
        j["bracket"].push_back(std::move(r));
    }
    j["form"] = d.form;
    j["p_power"] = json::array();
    for (auto& c : d.p_power) j["p_power"].push_back(combo_to_json(c));
    j["simple_e"] = d.simple_e;
    j["simple_f"] = d.simple_f;
    j["cartan_h"] = d.cartan_h;
    j["positive_roots"] = d.positive_roots;
    j["rho_h"] = d.rho_h;
    j["dual_coxeter"] = d.dual_coxeter;
    return j;
}

inline FiniteLieData lie_from_json(const json& j) {
    FiniteLieData d;
    d.name = j.at("name").get<std::string>();
    d.rank = j.at("rank").get<int>();
    for (auto& b : j.at("basis"))
        d.basis.push_back({b.at("name").get<std::string>(), b.at("weight").get<std::vector<int>>()});
    for (auto& row : j.at("bracket")) {
        std::vector<IntCombo> r;
        for (auto& c : row) r.push_back(combo_from_json(c));
        d.bracket.push_back(std::move(r));
    }
    d.form = j.at("form").get<std::vector<std::vector<long long>>>();
    for (auto& c : j.at("p_power")) d.p_power.push_back(combo_from_json(c));
    d.simple_e = j.at("simple_e").get<std::vector<int>>();
    d.simple_f = j.at("simple_f").get<std::vector<int>>();
    d.cartan_h = j.at("cartan_h").get<std::vector<int>>();
    d.positive_roots = j.at("positive_roots").get<std::vector<std::vector<int>>>();
    d.rho_h = j.at("rho_h").get<std::vector<long long>>();
    d.dual_coxeter = j.at("dual_coxeter").get<long long>();
    if (d.basis.empty() || d.bracket.size() != d.basis.size() || d.p_power.size() != d.basis.size() ||
        d.form.size() != d.basis.size())
        throw std::invalid_argument("lie_from_json: inconsistent table sizes");
    return d;
}

// ---------------------------------------------------------------------------
// WFF structure polynomials: per (i, beta) a polynomial in the a*-variables
// with integer coefficients.
// ---------------------------------------------------------------------------

inline AStarPoly astar_poly_from_json(const json& j) {
    AStarPoly poly;
    for (auto& t : j) {
        AStarMonomial m;
        for (auto& f : t.at("monomial")) m.factors.emplace_back(f.at(0).get<int>(), f.at(1).get<int>());
        poly.terms.emplace_back(t.at("coeff").get<long long>(), std::move(m));
    }
    return poly;
}

inline WffData wff_data_from_json(const json& j) {
    WffData d;
    d.rank = j.at("rank").get<int>();
    d.c = j.at("c").get<std::vector<long long>>();
    if (static_cast<int>(d.c.size()) != d.rank) throw std::invalid_argument("wff_data_from_json: c size != rank");
    for (auto& e : j.value("P", json::array()))
        d.P[{e.at("i").get<int>(), e.at("beta").get<int>()}] = astar_poly_from_json(e.at("poly"));
    for (auto& e : j.value("Q", json::array()))
        d.Q[{e.at("i").get<int>(), e.at("beta").get<int>()}] = astar_poly_from_json(e.at("poly"));
    return d;
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

inline json char_series_to_json(const CharSeries& s) {
    json coeffs = json::array();
    for (auto& [w, v] : s.coeffs())
        coeffs.push_back({{"alpha_coeffs", w.alpha}, {"delta_deg", w.delta_deg}, {"coeff", v}});
    return json{{"depth_cap", s.depth_cap()}, {"alpha_cap", s.alpha_cap()}, {"coeffs", std::move(coeffs)}};
}

} // namespace modvertex
