#pragma once

// JSON and Graphviz DOT encodings of planar Brauer trees.

#include <coxbrauer/brauer_tree.hpp>
#include <coxbrauer/error.hpp>
#include <coxbrauer/root_data.hpp>

#include <json.hpp>

#include <sstream>
#include <string>

namespace coxbrauer {

using Json = nlohmann::json;

inline Json to_json(const PlanarBrauerTree& t) {
    Json j;
    j["h0"] = t.h0;
    j["r"] = t.r;
    j["multiplicity"] = t.multiplicity;
    Json branches = Json::array();
    for (const auto& b : t.branches) branches.push_back({{"zeta", b.zeta}, {"m", b.m}, {"M", b.M}});
    j["branches"] = branches;
    j["cyclic_order"] = t.exceptional_order;
    Json vertices = Json::array();
    for (int v = 0; v < t.h0; ++v) {
        const auto& a = t.vertices[static_cast<std::size_t>(v)];
        if (!a.label && !a.a_chi && !a.A_chi) continue;
        Json entry{{"j", v}};
        if (a.label) entry["label"] = *a.label;
        if (a.a_chi) entry["a"] = *a.a_chi;
        if (a.A_chi) entry["A"] = *a.A_chi;
        vertices.push_back(entry);
    }
    if (!vertices.empty()) j["vertices"] = vertices;
    if (t.ell) j["ell"] = *t.ell;
    if (t.zeta_lift) j["zeta_lift"] = *t.zeta_lift;
    return j;
}

namespace detail {

inline const Json& require(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + "/" + key, "missing required field '" + key + "'");
    return *it;
}

inline i64 as_int(const Json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ParseError(where, "expected an integer");
    return v.get<i64>();
}

inline int as_small_int(const Json& v, const std::string& where) {
    const i64 x = as_int(v, where);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) throw ParseError(where, "integer out of range");
    return static_cast<int>(x);
}

} // namespace detail

inline PlanarBrauerTree tree_from_json(const Json& j) {
    using detail::as_int;
    using detail::as_small_int;
    using detail::require;
    SeriesDatum series;
    series.h0 = as_small_int(require(j, "h0", ""), "/h0");
    const int r = as_small_int(require(j, "r", ""), "/r");
    const int mu = as_small_int(require(j, "multiplicity", ""), "/multiplicity");
    if (series.h0 < 1) throw ParseError("/h0", "h0 must be positive");
    if (mu < 1) throw ParseError("/multiplicity", "multiplicity must be positive");
    const Json& branches = require(j, "branches", "");
    if (!branches.is_array()) throw ParseError("/branches", "expected an array");
    if (branches.empty()) throw ParseError("/branches", "series must have at least one branch");
    for (std::size_t k = 0; k < branches.size(); ++k) {
        const std::string where = "/branches/" + std::to_string(k);
        const Json& b = branches[k];
        series.branches.push_back({as_int(require(b, "zeta", where), where + "/zeta"),
                                   as_small_int(require(b, "m", where), where + "/m"),
                                   as_small_int(require(b, "M", where), where + "/M")});
    }
    PlanarBrauerTree t;
    try {
        t = build_hlm_tree(series, mu, r);
    } catch (const Error& e) {
        throw ParseError("/branches", e.what());
    }
    if (auto it = j.find("cyclic_order"); it != j.end()) {
        if (!it->is_array()) throw ParseError("/cyclic_order", "expected an array");
        std::vector<int> order;
        for (std::size_t k = 0; k < it->size(); ++k) order.push_back(as_small_int((*it)[k], "/cyclic_order/" + std::to_string(k)));
        t.exceptional_order = order;
        try {
            check_tree(t);
        } catch (const Error& e) {
            throw ParseError("/cyclic_order", e.what());
        }
    }
    if (auto it = j.find("vertices"); it != j.end()) {
        if (!it->is_array()) throw ParseError("/vertices", "expected an array");
        for (std::size_t k = 0; k < it->size(); ++k) {
            const std::string where = "/vertices/" + std::to_string(k);
            const Json& v = (*it)[k];
            const int idx = as_small_int(require(v, "j", where), where + "/j");
            if (idx < 0 || idx >= t.h0) throw ParseError(where + "/j", "vertex index out of range");
            auto& a = t.vertices[static_cast<std::size_t>(idx)];
            if (auto l = v.find("label"); l != v.end()) {
                if (!l->is_string()) throw ParseError(where + "/label", "expected a string");
                a.label = l->get<std::string>();
            }
            if (auto x = v.find("a"); x != v.end()) a.a_chi = as_int(*x, where + "/a");
            if (auto x = v.find("A"); x != v.end()) a.A_chi = as_int(*x, where + "/A");
        }
    }
    if (auto it = j.find("ell"); it != j.end()) {
        const i64 ell = as_int(*it, "/ell");
        if (ell < 2 || !is_prime(static_cast<u64>(ell))) throw ParseError("/ell", "ell must be prime");
        t.ell = static_cast<u64>(ell);
    }
    if (auto it = j.find("zeta_lift"); it != j.end()) {
        const i64 z = as_int(*it, "/zeta_lift");
        if (z < 0) throw ParseError("/zeta_lift", "expected a non-negative integer");
        t.zeta_lift = static_cast<u64>(z);
    }
    return t;
}

inline PlanarBrauerTree tree_from_json_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
    return tree_from_json(j);
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

inline std::string dot_id(const PlanarBrauerTree& t, int v) { return v == t.exceptional() ? "exc" : "chi" + std::to_string(v); }

} // namespace detail

/// Undirected graph; edges at the exceptional node are listed in anticlockwise
/// order, and every edge carries its position in the cyclic order at its inner
/// endpoint as the `order` attribute.
inline std::string to_dot(const PlanarBrauerTree& t) {
    std::ostringstream os;
    os << "graph brauer_tree {\n";
    os << "  node [shape=circle];\n";
    os << "  exc [label=\"exc (mu=" << t.multiplicity << ")\", style=filled, fillcolor=black, fontcolor=white];\n";
    for (int v = 0; v < t.h0; ++v) os << "  chi" << v << " [label=\"" << detail::dot_escape(t.vertex_name(v)) << "\"];\n";
    std::vector<int> edge_order = t.exceptional_order;
    for (int j = 0; j < t.h0; ++j)
        if (std::find(edge_order.begin(), edge_order.end(), j) == edge_order.end()) edge_order.push_back(j);
    for (int j : edge_order) {
        auto [u, v] = t.endpoints(j);
        const auto around = t.cyclic_order(u);
        const auto pos = std::find(around.begin(), around.end(), j) - around.begin();
        os << "  " << detail::dot_id(t, u) << " -- " << detail::dot_id(t, v) << " [label=\"S" << j << "\", order=" << pos << "];\n";
    }
    os << "}\n";
    return os.str();
}

/// Degree/twist table as JSON: [{"type", "degrees", "epsilons": ["p/q", ...]}].
inline Json table_to_json(const std::vector<CoxeterDatum>& data) {
    Json out = Json::array();
    for (const auto& c : data) {
        Json eps = Json::array();
        for (const auto& e : c.epsilons) eps.push_back(std::to_string(e.numerator()) + "/" + std::to_string(e.denominator()));
        out.push_back({{"type", c.type.name()}, {"degrees", c.degrees}, {"epsilons", eps}});
    }
    return out;
}

inline std::vector<CoxeterDatum> table_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("", "table must be an array");
    std::vector<CoxeterDatum> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "/" + std::to_string(i);
        const auto& row = j[i];
        if (!row.is_object()) throw ParseError(where, "expected an object");
        const auto& type = detail::require(row, "type", where);
        const auto& degrees = detail::require(row, "degrees", where);
        const auto& eps = detail::require(row, "epsilons", where);
        if (!type.is_string() || !degrees.is_array() || !eps.is_array() || degrees.size() != eps.size())
            throw ParseError(where, "malformed table row");
        std::vector<int> d;
        std::vector<Rational> e;
        for (std::size_t k = 0; k < degrees.size(); ++k) {
            d.push_back(detail::as_small_int(degrees[k], where + "/degrees/" + std::to_string(k)));
            const auto& ek = eps[k];
            const std::string ew = where + "/epsilons/" + std::to_string(k);
            if (!ek.is_string()) throw ParseError(ew, "expected \"p/q\"");
            const auto s = ek.get<std::string>();
            const auto slash = s.find('/');
            try {
                if (slash == std::string::npos) throw std::invalid_argument(s);
                const i64 den = std::stoll(s.substr(slash + 1));
                if (den <= 0) throw std::invalid_argument(s);
                e.emplace_back(std::stoll(s.substr(0, slash)), den);
            } catch (const std::logic_error&) {
                throw ParseError(ew, "bad fraction '" + s + "'");
            }
        }
        try {
            out.push_back(make_datum(parse_type(type.get<std::string>()), std::move(d), std::move(e)));
        } catch (const Error& err) {
            throw ParseError(where, err.what());
        }
    }
    return out;
}

inline std::vector<CoxeterDatum> table_from_json_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), "invalid JSON");
    }
    return table_from_json(j);
}

} // namespace coxbrauer
