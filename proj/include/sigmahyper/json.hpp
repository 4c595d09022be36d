#pragma once

// JSON encodings of specs, edges, matchings and matching reports.
//
//   spec:     {"n": int, "q": int, "sigma": [int, ...]}
//   edge:     [{"class": int, "rows": [int, ...]}, ...]
//   matching: {"edges": [edge, ...], "unmatched": [{"class": int, "row": int}, ...]}
//   report:   matching fields plus "nu", "unmatched_count", "strategy",
//             "certificates": [{"name": string, "value": int}]
//
// Decoders throw ValidationError on malformed input.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sigmahyper/core.hpp"
#include "sigmahyper/independence.hpp"
#include "sigmahyper/matching.hpp"

namespace sigmahyper {

using json = nlohmann::ordered_json;

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw ValidationError(std::string("expected an object holding \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(std::string("missing field \"") + key + "\"");
    return *it;
}

inline int int_field(const json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number_integer()) throw ValidationError(std::string("field \"") + key + "\" must be an integer");
    const auto value = v.get<std::int64_t>();
    if (value < INT32_MIN || value > INT32_MAX) throw ValidationError(std::string("field \"") + key + "\" out of range");
    return static_cast<int>(value);
}

inline std::vector<int> int_array(const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ValidationError(std::string(what) + " must hold integers");
        out.push_back(v.get<int>());
    }
    return out;
}

}  // namespace detail

inline json to_json(const HypergraphSpec& spec) {
    return json{{"n", spec.n}, {"q", spec.q}, {"sigma", spec.sigma.parts()}};
}

inline HypergraphSpec spec_from_json(const json& j) {
    return make_spec(detail::int_field(j, "n"), detail::int_field(j, "q"),
                     detail::int_array(detail::field(j, "sigma"), "\"sigma\""));
}

inline json to_json(const Edge& e) {
    json out = json::array();
    for (const auto& p : e.parts()) out.push_back({{"class", p.cls}, {"rows", p.rows}});
    return out;
}

inline Edge edge_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("an edge must be an array of parts");
    std::vector<EdgePart> parts;
    for (const auto& p : j) {
        parts.push_back({detail::int_field(p, "class"), detail::int_array(detail::field(p, "rows"), "\"rows\"")});
    }
    return Edge(std::move(parts));
}

inline json to_json(const VertexSet& set) {
    json out = json::array();
    for (const auto& v : set.members()) out.push_back({{"class", v.cls}, {"row", v.row}});
    return out;
}

inline json to_json(const Matching& m) {
    json edges = json::array();
    for (const auto& e : m.edges) edges.push_back(to_json(e));
    return json{{"edges", std::move(edges)}, {"unmatched", to_json(m.unmatched)}};
}

inline Matching matching_from_json(const json& j) {
    const auto& edges = detail::field(j, "edges");
    if (!edges.is_array()) throw ValidationError("\"edges\" must be an array");
    Matching m;
    for (const auto& e : edges) m.edges.push_back(edge_from_json(e));
    const auto& unmatched = detail::field(j, "unmatched");
    if (!unmatched.is_array()) throw ValidationError("\"unmatched\" must be an array");
    std::vector<Vertex> vs;
    for (const auto& v : unmatched) vs.push_back({detail::int_field(v, "class"), detail::int_field(v, "row")});
    m.unmatched = VertexSet(std::move(vs));
    return m;
}

inline json to_json(const MatchingReport& report, bool with_matching) {
    json out;
    out["nu"] = report.nu;
    out["unmatched_count"] = report.unmatched_count;
    out["strategy"] = report.strategy;
    out["proven"] = report.proven;
    json certs = json::array();
    for (const auto& c : report.certificates) certs.push_back({{"name", c.name}, {"value", c.value}});
    out["certificates"] = std::move(certs);
    if (with_matching) {
        const auto m = to_json(report.matching);
        out["edges"] = m["edges"];
        out["unmatched"] = m["unmatched"];
    }
    return out;
}

inline json to_json(const VerificationReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations) violations.push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
    return json{{"ok", report.ok()}, {"violations", std::move(violations)}};
}

inline json to_json(const FeasibleSequence& seq) { return json{{"b", seq.b}, {"k", seq.k}, {"t", seq.t}}; }

inline json to_json(const ColouringBounds& b) {
    return json{{"alpha_beta_ind", b.alpha_beta_ind},
                {"alpha_ind", b.alpha_ind},
                {"chi_lower", b.chi_lower},
                {"feasible", b.feasible}};
}

}  // namespace sigmahyper
