#pragma once

// JSON records for the checks. Exact values are "num/den" strings and big
// integers are decimal strings, so nothing is rounded on the way out.

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "semind/covering.hpp"
#include "semind/lpsearch.hpp"
#include "semind/verify.hpp"

namespace semind {

using Json = nlohmann::ordered_json;

inline Json exact(const Rational& q) { return to_fraction_string(q); }
inline Json exact(const BigInt& z) { return z.get_str(); }

/// log2 of a nonnegative rational for human readers; null for zero.
inline Json approx_log2(const Rational& q) {
    if (sgn(q) <= 0) return nullptr;
    return log2_rat(q);
}

inline Json to_json(const InequalityReport& r) {
    return Json{{"name", r.name},       {"k", r.k},
                {"host", r.host},       {"holds", r.holds},
                {"lhs", exact(r.lhs)},  {"rhs", exact(r.rhs)},
                {"slack", exact(r.slack)}, {"log2_lhs", approx_log2(r.lhs)},
                {"log2_rhs", approx_log2(r.rhs)}};
}

inline Json to_json(const TightnessPoint& p) {
    Json j{{"n", p.n}, {"red_residues", p.residues}};
    j["t"] = p.t ? exact(*p.t) : Json(nullptr);
    j["gap"] = p.gap ? exact(*p.gap) : Json(nullptr);
    j["gap_approx"] = p.gap ? Json(to_double(*p.gap)) : Json(nullptr);
    if (!p.note.empty()) j["note"] = p.note;
    return j;
}

inline Json to_json(const MaxResult& r) {
    return Json{{"max", exact(r.max)},
                {"max_approx", to_double(r.max)},
                {"argmax_index", r.argmax_index},
                {"argmax", to_ecg_string(r.argmax)},
                {"hosts_examined", r.hosts_examined},
                {"heuristic", r.heuristic}};
}

inline Json to_json(const ExpansionReport& r) {
    return Json{{"host", r.host},
                {"hom_alternating", exact(r.hom_alternating)},
                {"hom_red_path", exact(r.hom_red_path)},
                {"hom_red_edge", exact(r.hom_red_edge)},
                {"red_two_walks", exact(r.red_two_walks)},
                {"lhs", exact(r.lhs)},
                {"rhs", exact(r.rhs)},
                {"holds", r.holds}};
}

inline Json to_json(const CoverSumReport& r) {
    Json mismatches = Json::array();
    for (const auto& c : r.checks) {
        if (c.ok) continue;
        mismatches.push_back({{"kind", c.is_edge ? "edge" : "vertex"},
                              {"index", c.index},
                              {"formula", exact(c.formula)},
                              {"counted", c.counted}});
    }
    return Json{{"k", r.k},
                {"target", exact(r.target)},
                {"multiplicity", r.multiplicity ? Json(*r.multiplicity) : Json(nullptr)},
                {"count", r.direct ? "direct" : "implicit"},
                {"pass", r.pass},
                {"mismatches", mismatches}};
}

inline Json to_json(const SequenceTriple& s) {
    auto list = [](const std::vector<BigInt>& v) {
        Json a = Json::array();
        for (const auto& e : v) a.push_back(exact(e));
        return a;
    };
    return Json{{"k", s.k}, {"x", list(s.x)}, {"y", list(s.y)}, {"z", list(s.z)}};
}

inline Json to_json(const SynthesisCheck& c) {
    return Json{{"vertices", exact(c.vertices)},
                {"materialized", c.materialized},
                {"uniform_multiplicity", c.uniform_multiplicity ? exact(*c.uniform_multiplicity) : Json(nullptr)}};
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace semind
