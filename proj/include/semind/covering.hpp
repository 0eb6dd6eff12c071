#pragma once

// Preimage counts of phi onto the spine, the closed-form cover sums over
// (x, y, z), and the cross-check between the two.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "semind/constructions.hpp"
#include "semind/forest.hpp"
#include "semind/rational.hpp"

namespace semind {

struct CoverProfile {
    std::vector<std::uint64_t> vertex_cover;  // |phi^-1(v_j)|
    std::vector<std::uint64_t> edge_cover;    // |phi^-1(v_j v_{j+1})|
    std::optional<std::uint64_t> uniform_multiplicity;
};

inline std::optional<std::uint64_t> common_value(const std::vector<std::uint64_t>& a,
                                                 const std::vector<std::uint64_t>& b) {
    if (a.empty()) return std::nullopt;
    const std::uint64_t m = a.front();
    for (auto c : a) {
        if (c != m) return std::nullopt;
    }
    for (auto c : b) {
        if (c != m) return std::nullopt;
    }
    return m;
}

/// Throws with the offending edge if phi is not a homomorphism onto the spine.
inline void check_homomorphism(const LabelledForest& f) {
    if (f.phi.size() != f.graph.num_vertices()) throw InvalidInput("phi must have one image per vertex");
    if (auto bad = phi_violation(f)) {
        throw InvalidInput("phi is not a homomorphism: edge (" + std::to_string(bad->u) + "," +
                           std::to_string(bad->v) + ") colour " + colour_letter(bad->colour) + " maps to (" +
                           std::to_string(f.phi[bad->u]) + "," + std::to_string(f.phi[bad->v]) + ")");
    }
}

inline CoverProfile cover_profile(const LabelledForest& f) {
    check_homomorphism(f);
    auto [vertices, edges] = tally_preimages(f);
    CoverProfile p;
    p.uniform_multiplicity = common_value(vertices, edges);
    p.vertex_cover = std::move(vertices);
    p.edge_cover = std::move(edges);
    return p;
}

/// Exact preimage counts of the X/Y/Z construction read off class sizes and
/// the images of each class, without materialising the forest.
struct ImplicitCover {
    std::vector<BigInt> vertex_cover;
    std::vector<BigInt> edge_cover;
    std::optional<BigInt> uniform_multiplicity;
};

inline ImplicitCover implicit_cover_counts(const SequenceTriple& s) {
    if (auto err = check_sequence_triple(s)) throw InvalidInput("implicit_cover_profile: " + *err);
    const std::size_t L = 2 * s.k + 1;
    const BigInt a = static_cast<unsigned long>(s.k + 1);
    const BigInt b = static_cast<unsigned long>(s.k);
    std::vector<BigInt> vc(L + 1, BigInt(1)), ec(L, BigInt(1));
    auto image = [&](std::uint32_t j, Colour c) {
        auto w = spine_neighbour(L, j, c);
        if (!w) throw InvalidInput("implicit_cover_profile: class at v_" + std::to_string(j) + " has no " + colour_letter(c) + " image");
        return *w;
    };
    auto add_edge = [&](std::uint32_t p, std::uint32_t q, const BigInt& count) { ec[std::min(p, q)] += count; };
    for (std::uint32_t j = 0; j <= L; ++j) {
        const BigInt xr = a * s.x[j], xb = b * s.x[j], zr = a * s.z[j], zb = b * s.z[j];
        if (sgn(xr) > 0) {
            const auto r = image(j, Colour::Red);
            vc[r] += xr;
            add_edge(j, r, xr);
        }
        if (sgn(xb) > 0) {
            const auto w = image(j, Colour::Blue);
            vc[w] += xb;
            add_edge(j, w, xb);
        }
        if (sgn(zr) > 0) {
            const auto r = image(j, Colour::Red);
            const auto rb = image(r, Colour::Blue);
            vc[r] += zr;
            vc[rb] += zr;
            add_edge(j, r, zr);
            add_edge(r, rb, zr);
        }
        if (sgn(zb) > 0) {
            const auto w = image(j, Colour::Blue);
            const auto wb = image(w, Colour::Blue);
            vc[w] += zb;
            vc[wb] += zb;
            add_edge(j, w, zb);
            add_edge(w, wb, zb);
        }
        if (j < L) {
            const BigInt y = a * s.y[j];
            vc[j] += y;
            vc[j + 1] += y;
            ec[j] += y;
        }
    }
    ImplicitCover out;
    if (std::all_of(vc.begin(), vc.end(), [&](const BigInt& v) { return v == vc[0]; }) &&
        std::all_of(ec.begin(), ec.end(), [&](const BigInt& e) { return e == vc[0]; })) {
        out.uniform_multiplicity = vc[0];
    }
    out.vertex_cover = std::move(vc);
    out.edge_cover = std::move(ec);
    return out;
}

/// Same as implicit_cover_counts; throws std::overflow_error past 64 bits.
inline CoverProfile implicit_cover_profile(const SequenceTriple& s) {
    const ImplicitCover c = implicit_cover_counts(s);
    CoverProfile p;
    for (const auto& v : c.vertex_cover) p.vertex_cover.push_back(to_u64(v));
    for (const auto& e : c.edge_cover) p.edge_cover.push_back(to_u64(e));
    p.uniform_multiplicity = common_value(p.vertex_cover, p.edge_cover);
    return p;
}

// ---------------------------------------------------------------------------
// Closed-form cover sums as linear functionals. lpsearch turns the same
// terms into constraint rows.

enum class SeqVar : std::uint8_t { X, Y, Z };

struct LinearTerm {
    SeqVar var;
    long long index;
    std::uint64_t coef;
};

using LinearFunctional = std::vector<LinearTerm>;

namespace detail {
inline bool in_range(SeqVar v, long long i, std::size_t k) {
    const long long len = static_cast<long long>(v == SeqVar::Y ? 2 * k + 1 : 2 * k + 2);
    return i >= 0 && i < len;
}
inline LinearFunctional keep_in_range(std::initializer_list<LinearTerm> terms, std::size_t k) {
    LinearFunctional out;
    for (const auto& t : terms) {
        if (t.coef != 0 && in_range(t.var, t.index, k)) out.push_back(t);
    }
    return out;
}
}  // namespace detail

/// c(v_j): how often the non-spine part of H_{2k+1} covers spine vertex j.
inline LinearFunctional c_vertex_terms(std::size_t k, std::size_t j) {
    if (j > 2 * k + 1) throw InvalidInput("c_vertex: spine index out of range");
    const std::uint64_t a = k + 1, b = k;
    const long long m = static_cast<long long>(j);
    using enum SeqVar;
    if (j % 2 == 0) {
        return detail::keep_in_range({{X, m - 1, b}, {X, m + 1, a}, {Y, m - 1, a}, {Y, m, a},
                                      {Z, m - 2, a}, {Z, m - 1, b}, {Z, m, b}, {Z, m + 1, a}}, k);
    }
    const long long i = m - 1;
    return detail::keep_in_range({{X, i, a}, {X, i + 2, b}, {Y, i, a}, {Y, i + 1, a},
                                  {Z, i, a}, {Z, i + 1, b}, {Z, i + 2, b}, {Z, i + 3, a}}, k);
}

/// c(v_j, v_{j+1}) for the spine edge with left endpoint j.
inline LinearFunctional c_edge_terms(std::size_t k, std::size_t j) {
    if (j > 2 * k) throw InvalidInput("c_edge: spine edge out of range");
    const std::uint64_t a = k + 1, b = k;
    const long long m = static_cast<long long>(j);
    using enum SeqVar;
    if (j % 2 == 0) {
        return detail::keep_in_range({{X, m, a}, {X, m + 1, a}, {Y, m, a}, {Z, m, a}, {Z, m + 1, a}}, k);
    }
    const long long i = m - 1;
    return detail::keep_in_range({{X, i + 1, b}, {X, i + 2, b}, {Y, i + 1, a}, {Z, i, a},
                                  {Z, i + 1, 2 * b}, {Z, i + 2, 2 * b}, {Z, i + 3, a}}, k);
}

inline BigInt evaluate(const LinearFunctional& f, const SequenceTriple& s) {
    BigInt total = 0;
    for (const auto& t : f) {
        const auto& v = t.var == SeqVar::X ? s.x : t.var == SeqVar::Y ? s.y : s.z;
        total += from_u64(t.coef) * SequenceTriple::at(v, t.index);
    }
    return total;
}

inline BigInt c_vertex(std::size_t k, std::size_t j, const SequenceTriple& s) { return evaluate(c_vertex_terms(k, j), s); }
inline BigInt c_edge(std::size_t k, std::size_t j, const SequenceTriple& s) { return evaluate(c_edge_terms(k, j), s); }

// ---------------------------------------------------------------------------

struct CoverSumCheck {
    bool is_edge = false;
    std::size_t index = 0;
    BigInt formula;
    std::uint64_t counted = 0;
    bool ok = false;
};

struct CoverSumReport {
    std::size_t k = 0;
    BigInt target;
    bool direct = false;  // counted on the materialised forest rather than class sizes
    std::optional<std::uint64_t> multiplicity;
    std::vector<CoverSumCheck> checks;
    bool pass = false;

    std::string text() const {
        std::ostringstream out;
        out << "k=" << k << " target=" << target << " multiplicity="
            << (multiplicity ? std::to_string(*multiplicity) : std::string("none"))
            << " count=" << (direct ? "direct" : "implicit") << ' ' << (pass ? "PASS" : "FAIL") << '\n';
        for (const auto& c : checks) {
            if (c.ok) continue;
            out << "  mismatch k=" << k << (c.is_edge ? " edge " : " vertex ") << c.index << " formula=" << c.formula
                << " counted=" << c.counted << '\n';
        }
        return out.str();
    }
};

inline constexpr std::size_t kDefaultDirectMax = 30;

/// Checks every closed-form cover sum against the target and against the
/// preimage counts of the built forest (count = formula + 1, the +1 being the
/// spine itself). Forests with k above `direct_max` are counted from class
/// sizes instead of being materialised.
inline CoverSumReport verify_appendix(std::size_t k, std::size_t direct_max = kDefaultDirectMax) {
    if (k == 0) throw InvalidInput("verify_appendix: k must be at least 1");
    CoverSumReport r;
    r.k = k;
    r.target = cover_target(k);
    const SequenceTriple s = sequences(k);
    r.direct = k <= direct_max;
    const CoverProfile p = r.direct ? cover_profile(build_h_odd(k)) : implicit_cover_profile(s);
    r.multiplicity = p.uniform_multiplicity;
    bool pass = p.uniform_multiplicity.has_value() && from_u64(*p.uniform_multiplicity) == r.target + 1;
    for (std::size_t j = 0; j <= 2 * k + 1; ++j) {
        CoverSumCheck c{false, j, c_vertex(k, j, s), p.vertex_cover[j], false};
        c.ok = c.formula == r.target && from_u64(c.counted) == c.formula + 1;
        pass = pass && c.ok;
        r.checks.push_back(std::move(c));
    }
    for (std::size_t j = 0; j <= 2 * k; ++j) {
        CoverSumCheck c{true, j, c_edge(k, j, s), p.edge_cover[j], false};
        c.ok = c.formula == r.target && from_u64(c.counted) == c.formula + 1;
        pass = pass && c.ok;
        r.checks.push_back(std::move(c));
    }
    r.pass = pass;
    return r;
}

}  // namespace semind
