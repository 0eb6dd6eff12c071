#pragma once

// Sequence triples as solutions of a linear feasibility problem: every cover
// sum equals a common t, entries are nonnegative and sum to one. Feasible
// points are scaled to integers and turned back into forests.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "semind/constructions.hpp"
#include "semind/covering.hpp"
#include "semind/lp.hpp"

namespace semind {

/// Column layout: x_0..x_{2k+1}, y_0..y_{2k}, z_0..z_{2k+1}, then t.
struct SequenceLayout {
    std::size_t k;
    std::size_t x0() const { return 0; }
    std::size_t y0() const { return 2 * k + 2; }
    std::size_t z0() const { return 4 * k + 3; }
    std::size_t t() const { return 6 * k + 5; }
    std::size_t num_vars() const { return 6 * k + 6; }
    std::size_t column(SeqVar v, std::size_t i) const {
        return (v == SeqVar::X ? x0() : v == SeqVar::Y ? y0() : z0()) + i;
    }
    std::size_t length(SeqVar v) const { return v == SeqVar::Y ? 2 * k + 1 : 2 * k + 2; }
};

inline std::vector<std::string> sequence_var_names(std::size_t k) {
    const SequenceLayout lay{k};
    std::vector<std::string> names;
    for (auto [v, c] : {std::pair{SeqVar::X, 'x'}, std::pair{SeqVar::Y, 'y'}, std::pair{SeqVar::Z, 'z'}}) {
        for (std::size_t i = 0; i < lay.length(v); ++i) names.push_back(std::string(1, c) + std::to_string(i));
    }
    names.push_back("t");
    return names;
}

/// Parses extra rows, one per line: terms, a relation and a rational right-hand
/// side, e.g. "z2 - 2*x1 >= 0" or "1/2*y0 + t = 3". Variables are x<i>, y<i>, z<i>
/// and t; '#' starts a comment.
inline std::vector<LpRow> parse_extra_rows(std::istream& in, std::size_t k) {
    const SequenceLayout lay{k};
    const auto names = sequence_var_names(k);
    std::vector<LpRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string tok; ls >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;
        auto fail = [&](const std::string& why) {
            return InvalidInput("extra rows line " + std::to_string(line_no) + ": " + why);
        };
        LpRow row;
        row.coeffs.assign(lay.num_vars(), Rational(0));
        row.label = "extra:" + std::to_string(line_no);
        bool have_relation = false;
        int sign = 1;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const std::string& tok = tokens[i];
            if (tok == "=" || tok == ">=" || tok == "<=") {
                if (have_relation || i + 2 != tokens.size()) throw fail("relation must be followed by exactly one number");
                row.relation = tok == "=" ? Relation::Eq : tok == ">=" ? Relation::Ge : Relation::Le;
                try {
                    row.rhs = parse_fraction(tokens[i + 1]);
                } catch (const std::exception&) {
                    throw fail("bad right-hand side '" + tokens[i + 1] + "'");
                }
                have_relation = true;
                break;
            }
            if (tok == "+" || tok == "-") {
                sign = tok == "-" ? -1 : 1;
                continue;
            }
            std::string var = tok;
            Rational coef = 1;
            if (auto star = tok.find('*'); star != std::string::npos) {
                try {
                    coef = parse_fraction(tok.substr(0, star));
                } catch (const std::exception&) {
                    throw fail("bad coefficient in '" + tok + "'");
                }
                var = tok.substr(star + 1);
            } else if (!var.empty() && var[0] == '-') {
                coef = -1;
                var = var.substr(1);
            }
            auto it = std::find(names.begin(), names.end(), var);
            if (it == names.end()) throw fail("unknown variable '" + var + "'");
            row.coeffs[static_cast<std::size_t>(it - names.begin())] += sign * coef;
            sign = 1;
        }
        if (!have_relation) throw fail("missing relation (=, >= or <=)");
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<LpRow> parse_extra_rows(const std::string& text, std::size_t k) {
    std::istringstream in(text);
    return parse_extra_rows(in, k);
}

/// Cover rows c_vertex = t and c_edge = t from the covering functionals,
/// normalisation sum(x, y, z) = 1, mirror symmetry, and the zeros the
/// construction needs at the ends of the spine (no blue edge leaves v_0 or
/// v_{2k+1}, so x_0, z_0, z_1 and their mirrors must vanish). Objective: minimise t.
inline LpProblem build_constraints(std::size_t k, const std::vector<LpRow>& extra = {}) {
    if (k == 0) throw InvalidInput("build_constraints: k must be at least 1");
    const SequenceLayout lay{k};
    LpProblem p;
    p.num_vars = lay.num_vars();
    p.var_names = sequence_var_names(k);
    auto blank = [&] { return std::vector<Rational>(p.num_vars, Rational(0)); };
    auto cover_row = [&](const LinearFunctional& f, std::string label) {
        LpRow row{blank(), Relation::Eq, 0, std::move(label)};
        for (const auto& term : f) row.coeffs[lay.column(term.var, static_cast<std::size_t>(term.index))] += from_u64(term.coef);
        row.coeffs[lay.t()] -= 1;
        p.rows.push_back(std::move(row));
    };
    for (std::size_t j = 0; j <= 2 * k + 1; ++j) cover_row(c_vertex_terms(k, j), "vertex:" + std::to_string(j));
    for (std::size_t j = 0; j <= 2 * k; ++j) cover_row(c_edge_terms(k, j), "edge:" + std::to_string(j));

    LpRow norm{blank(), Relation::Eq, 1, "normalisation"};
    for (std::size_t j = 0; j < lay.t(); ++j) norm.coeffs[j] = 1;
    p.rows.push_back(std::move(norm));

    for (SeqVar v : {SeqVar::X, SeqVar::Y, SeqVar::Z}) {
        const std::size_t len = lay.length(v);
        for (std::size_t i = 0; i < len / 2; ++i) {
            LpRow row{blank(), Relation::Eq, 0, "mirror:" + p.var_names[lay.column(v, i)]};
            row.coeffs[lay.column(v, i)] = 1;
            row.coeffs[lay.column(v, len - 1 - i)] = -1;
            p.rows.push_back(std::move(row));
        }
    }
    for (std::size_t col : {lay.column(SeqVar::X, 0), lay.column(SeqVar::Z, 0), lay.column(SeqVar::Z, 1)}) {
        LpRow row{blank(), Relation::Eq, 0, "zero:" + p.var_names[col]};
        row.coeffs[col] = 1;
        p.rows.push_back(std::move(row));
    }
    for (const auto& row : extra) {
        if (row.coeffs.size() != p.num_vars) throw InvalidInput("build_constraints: extra row has the wrong length");
        p.rows.push_back(row);
    }
    std::vector<Rational> objective = blank();
    objective[lay.t()] = 1;
    p.objective = std::move(objective);
    return p;
}

/// The triple s and its cover value as a point of build_constraints(k), scaled to sum 1.
inline std::vector<Rational> normalised_point(const SequenceTriple& s) {
    const SequenceLayout lay{s.k};
    std::vector<Rational> x(lay.num_vars(), Rational(0));
    BigInt total = 0;
    for (const auto* v : {&s.x, &s.y, &s.z}) {
        for (const auto& e : *v) total += e;
    }
    if (sgn(total) == 0) throw InvalidInput("normalised_point: all entries are zero");
    for (std::size_t i = 0; i < s.x.size(); ++i) x[lay.column(SeqVar::X, i)] = make_rational(s.x[i], total);
    for (std::size_t i = 0; i < s.y.size(); ++i) x[lay.column(SeqVar::Y, i)] = make_rational(s.y[i], total);
    for (std::size_t i = 0; i < s.z.size(); ++i) x[lay.column(SeqVar::Z, i)] = make_rational(s.z[i], total);
    x[lay.t()] = make_rational(c_vertex(s.k, 0, s), total);
    return x;
}

struct ScaledSolution {
    SequenceTriple triple;
    BigInt t;  // common cover sum; the forest covers every spine element t + 1 times
};

inline ScaledSolution scale_solution(const LpSolution& sol, std::size_t k) {
    if (sol.status != LpStatus::Feasible) throw InvalidInput("scale_solution: the problem is infeasible");
    const SequenceLayout lay{k};
    if (sol.assignment.size() != lay.num_vars()) throw InvalidInput("scale_solution: assignment has the wrong length");
    const auto ints = scale_to_integers(sol.assignment);
    ScaledSolution out;
    out.triple.k = k;
    auto slice = [&](SeqVar v) {
        const auto begin = ints.begin() + static_cast<std::ptrdiff_t>(lay.column(v, 0));
        return std::vector<BigInt>(begin, begin + static_cast<std::ptrdiff_t>(lay.length(v)));
    };
    out.triple.x = slice(SeqVar::X);
    out.triple.y = slice(SeqVar::Y);
    out.triple.z = slice(SeqVar::Z);
    out.t = ints[lay.t()];
    return out;
}

/// Forests above this many vertices are checked from class sizes instead.
inline constexpr std::uint64_t kDefaultSynthesisMax = 2'000'000;

/// The X/Y/Z construction for an arbitrary nonnegative symmetric triple.
inline LabelledForest synthesize_forest(std::size_t k, const SequenceTriple& s,
                                        std::uint64_t max_vertices = UINT32_MAX) {
    if (s.k != k) throw InvalidInput("synthesize_forest: triple is for a different k");
    return build_from_sequences(s, max_vertices);
}

struct SynthesisCheck {
    BigInt vertices;
    bool materialized = false;
    std::vector<BigInt> vertex_cover;
    std::vector<BigInt> edge_cover;
    std::optional<BigInt> uniform_multiplicity;
};

/// Cover profile of the synthesized forest: counted on the built forest when it
/// has at most max_vertices vertices, otherwise read off the class sizes.
inline SynthesisCheck check_synthesized(std::size_t k, const SequenceTriple& s,
                                        std::uint64_t max_vertices = kDefaultSynthesisMax) {
    if (s.k != k) throw InvalidInput("check_synthesized: triple is for a different k");
    if (auto err = check_sequence_triple(s)) throw InvalidInput("check_synthesized: " + *err);
    SynthesisCheck out;
    out.vertices = forest_size(s);
    out.materialized = out.vertices <= from_u64(max_vertices);
    if (out.materialized) {
        const CoverProfile p = cover_profile(synthesize_forest(k, s));
        for (auto v : p.vertex_cover) out.vertex_cover.push_back(from_u64(v));
        for (auto e : p.edge_cover) out.edge_cover.push_back(from_u64(e));
        if (p.uniform_multiplicity) out.uniform_multiplicity = from_u64(*p.uniform_multiplicity);
    } else {
        ImplicitCover c = implicit_cover_counts(s);
        out.vertex_cover = std::move(c.vertex_cover);
        out.edge_cover = std::move(c.edge_cover);
        out.uniform_multiplicity = std::move(c.uniform_multiplicity);
    }
    return out;
}

/// Text table of (x, y, z, t).
inline std::string solution_table(const ScaledSolution& s) {
    std::ostringstream out;
    out << "i x y z\n";
    for (std::size_t i = 0; i < s.triple.x.size(); ++i) {
        out << i << ' ' << s.triple.x[i] << ' ' << (i < s.triple.y.size() ? s.triple.y[i].get_str() : "-") << ' '
            << s.triple.z[i] << '\n';
    }
    out << "t " << s.t << '\n';
    return out.str();
}

}  // namespace semind
