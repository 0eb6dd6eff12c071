#pragma once

// Exact checks of the path inequalities on concrete hosts. Fractional
// exponents are cleared by raising both sides to a common integer power, so
// every verdict is a comparison of two rationals.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "semind/constructions.hpp"
#include "semind/covering.hpp"
#include "semind/ecgraph.hpp"
#include "semind/homcount.hpp"
#include "semind/rational.hpp"

namespace semind {

/// FNV-1a over the .ecg text, as 16 hex digits.
inline std::string host_digest(const EdgeColouredGraph& g) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : to_ecg_string(g)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 15];
    return out;
}

inline std::string describe_host(const EdgeColouredGraph& g) {
    return "n=" + std::to_string(g.num_vertices()) + " red=" + std::to_string(g.red_edges()) +
           " blue=" + std::to_string(g.blue_edges()) + " hash=" + host_digest(g);
}

struct InequalityReport {
    std::string name;
    std::size_t k = 0;
    std::string host;
    Rational lhs;
    Rational rhs;
    bool holds = false;
    Rational slack;  // rhs - lhs

    static InequalityReport make(std::string name, std::size_t k, const EdgeColouredGraph& g, Rational lhs,
                                 Rational rhs) {
        InequalityReport r{std::move(name), k, describe_host(g), std::move(lhs), std::move(rhs), false, 0};
        r.holds = r.lhs <= r.rhs;
        r.slack = r.rhs - r.lhs;
        return r;
    }
};

/// k^k (k+1)^{k+1} / (2k+1)^{2k+1}.
inline Rational odd_path_bound(std::size_t k) {
    if (k == 0) throw InvalidInput("odd_path_bound: k must be at least 1");
    return make_rational(pow_int(k, k) * pow_int(k + 1, k + 1), pow_int(2 * k + 1, 2 * k + 1));
}

/// (1/2)^{2k}.
inline Rational even_path_bound(std::size_t k) {
    if (k == 0) throw InvalidInput("even_path_bound: k must be at least 1");
    return make_rational(BigInt(1), pow_int(2, 2 * k));
}

namespace detail {

/// Multiplicity of h over the spine P_{2k+1}^A; rejects anything else.
inline std::uint64_t require_uniform_cover(const LabelledForest& h, std::size_t k, const char* context) {
    if (k == 0) throw InvalidInput(std::string(context) + ": k must be at least 1");
    if (h.spine_length != 2 * k + 1) {
        throw InvalidInput(std::string(context) + ": forest has spine length " + std::to_string(h.spine_length) +
                           ", expected " + std::to_string(2 * k + 1));
    }
    const CoverProfile p = cover_profile(h);
    if (!p.uniform_multiplicity) throw InvalidInput(std::string(context) + ": covering of the spine is not uniform");
    return *p.uniform_multiplicity;
}

}  // namespace detail

/// t(P, g)^{e(H)} <= t(H, g)^{e(P)} with P = P_{2k+1}^A.
inline InequalityReport check_eq_ph(const LabelledForest& h, std::size_t k, const EdgeColouredGraph& g) {
    detail::require_uniform_cover(h, k, "check_eq_ph");
    const auto p = alternating_path(2 * k + 1);
    const Rational tp = density(p, g);
    const Rational th = density(h.graph, g);
    return InequalityReport::make("path-vs-forest", k, g, pow_rat(tp, h.graph.num_edges()),
                                  pow_rat(th, p.num_edges()));
}

/// t(H, g)^{2k+1} <= C^{e(H) - e(P)} t(P, g)^{2k+1} with C = odd_path_bound(k).
inline InequalityReport check_eq_hp(const LabelledForest& h, std::size_t k, const EdgeColouredGraph& g) {
    detail::require_uniform_cover(h, k, "check_eq_hp");
    const auto p = alternating_path(2 * k + 1);
    const Rational tp = density(p, g);
    const Rational th = density(h.graph, g);
    const std::size_t extra = h.graph.num_edges() - p.num_edges();
    return InequalityReport::make("forest-vs-path", k, g, pow_rat(th, 2 * k + 1),
                                  pow_rat(odd_path_bound(k), extra) * pow_rat(tp, 2 * k + 1));
}

inline InequalityReport check_theorem_odd(std::size_t k, const EdgeColouredGraph& g) {
    const Rational bound = odd_path_bound(k);
    return InequalityReport::make("odd-path-bound", k, g, density(alternating_path(2 * k + 1), g), bound);
}

inline InequalityReport check_theorem_even(std::size_t k, const EdgeColouredGraph& g) {
    const Rational bound = even_path_bound(k);
    return InequalityReport::make("even-path-bound", k, g, density(alternating_path(2 * k), g), bound);
}

// ---------------------------------------------------------------------------
// Circulant hosts near the extremal degree ratio.

struct TightnessPoint {
    std::size_t n = 0;
    std::vector<std::size_t> residues;  // empty when skipped
    std::optional<Rational> t;
    std::optional<Rational> gap;  // bound - t
    std::string note;
};

/// Red residues {1..r} and {n-r..n-1} with r = floor(d/2), d = round((k+1)(n-1)/(2k+1)).
inline std::vector<std::size_t> tightness_residues(std::size_t k, std::size_t n) {
    if (n < 2) return {};
    const std::size_t num = (k + 1) * (n - 1);
    const std::size_t den = 2 * k + 1;
    const std::size_t d = (2 * num + den) / (2 * den);
    const std::size_t r = d / 2;
    std::vector<std::size_t> s;
    for (std::size_t i = 1; i <= r; ++i) s.push_back(i);
    for (std::size_t i = n - r; i < n; ++i) s.push_back(i);
    return s;
}

inline std::vector<TightnessPoint> tightness_curve(std::size_t k, const std::vector<std::size_t>& n_list) {
    const Rational bound = odd_path_bound(k);
    const auto p = alternating_path(2 * k + 1);
    std::vector<TightnessPoint> out;
    for (std::size_t n : n_list) {
        TightnessPoint pt;
        pt.n = n;
        pt.residues = tightness_residues(k, n);
        if (pt.residues.empty()) {
            pt.note = "no red residues at this n; skipped";
        } else {
            pt.t = density(p, circulant_host(n, pt.residues));
            pt.gap = bound - *pt.t;
        }
        out.push_back(std::move(pt));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Maximum density over hosts on n labelled vertices.

struct ExhaustiveOptions {
    unsigned workers = 1;
    std::uint64_t budget = 100'000'000;  // hosts
    bool allow_heuristic = false;
    std::uint64_t seed = 1;
    std::size_t restarts = 64;
};

struct MaxResult {
    Rational max;
    EdgeColouredGraph argmax;
    std::uint64_t argmax_index = 0;  // enumeration index; meaningful only when exhaustive
    std::uint64_t hosts_examined = 0;
    bool heuristic = false;
};

namespace detail {

inline std::uint64_t host_index(const EdgeColouredGraph& g) {
    const std::size_t n = g.num_vertices();
    std::uint64_t idx = 0, place = 1;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (auto c = g.colour_of(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
                idx += place * (*c == Colour::Red ? 1 : 2);
            }
            place *= 3;
        }
    }
    return idx;
}

/// Random restarts, each climbing by single-pair recolourings until no change helps.
inline MaxResult local_search_max(const EdgeColouredGraph& pattern, std::size_t n, const ExhaustiveOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    const std::size_t pairs = pair_count(n);
    std::vector<std::pair<Vertex, Vertex>> pair_list;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) pair_list.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    auto build = [&](const std::vector<std::uint8_t>& state) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < pairs; ++i) {
            if (state[i]) edges.push_back({pair_list[i].first, pair_list[i].second, state[i] == 1 ? Colour::Red : Colour::Blue});
        }
        return EdgeColouredGraph(n, std::move(edges));
    };
    MaxResult best;
    best.heuristic = true;
    bool have = false;
    for (std::size_t round = 0; round < std::max<std::size_t>(opt.restarts, 1); ++round) {
        std::vector<std::uint8_t> state(pairs);
        for (auto& s : state) s = static_cast<std::uint8_t>(rng() % 3);
        Rational cur = density(pattern, build(state));
        ++best.hosts_examined;
        for (bool improved = true; improved;) {
            improved = false;
            for (std::size_t i = 0; i < pairs; ++i) {
                const std::uint8_t keep = state[i];
                for (std::uint8_t s = 0; s < 3; ++s) {
                    if (s == keep) continue;
                    state[i] = s;
                    Rational t = density(pattern, build(state));
                    ++best.hosts_examined;
                    if (t > cur) {
                        cur = std::move(t);
                        improved = true;
                        break;
                    }
                    state[i] = keep;
                }
            }
        }
        const auto g = build(state);
        const auto idx = host_index(g);
        if (!have || cur > best.max || (cur == best.max && idx < best.argmax_index)) {
            best.max = cur;
            best.argmax = g;
            best.argmax_index = idx;
            have = true;
        }
    }
    return best;
}

}  // namespace detail

/// Exact maximum of t(pattern, .) over all 3^{n(n-1)/2} hosts; ties go to the
/// smallest enumeration index, so the answer does not depend on the worker count.
inline MaxResult exhaustive_max(const EdgeColouredGraph& pattern, std::size_t n, const ExhaustiveOptions& opt = {}) {
    require_valid(pattern, "exhaustive_max pattern");
    if (n == 0) throw InvalidInput("exhaustive_max: n must be at least 1");
    std::uint64_t total = UINT64_MAX;
    try {
        total = host_count(n);
    } catch (const InvalidInput&) {
    }
    if (total > opt.budget) {
        if (!opt.allow_heuristic) throw BudgetExceeded("exhaustive_max: hosts on " + std::to_string(n) + " vertices", total, opt.budget);
        return detail::local_search_max(pattern, n, opt);
    }
    const unsigned workers = std::max(1U, std::min<unsigned>(opt.workers, static_cast<unsigned>(std::min<std::uint64_t>(total, 256))));
    std::vector<MaxResult> partial(workers);
    auto work = [&](unsigned w) {
        const std::uint64_t begin = total / workers * w + std::min<std::uint64_t>(w, total % workers);
        const std::uint64_t end = begin + total / workers + (w < total % workers ? 1 : 0);
        MaxResult& r = partial[w];
        r.max = -1;
        for_each_host(n, begin, end, [&](std::uint64_t idx, const EdgeColouredGraph& g) {
            Rational t = density(pattern, g);
            ++r.hosts_examined;
            if (t > r.max) {
                r.max = std::move(t);
                r.argmax = g;
                r.argmax_index = idx;
            }
        });
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    MaxResult best = std::move(partial[0]);
    for (unsigned w = 1; w < workers; ++w) {
        best.hosts_examined += partial[w].hosts_examined;
        if (partial[w].max > best.max) {
            best.max = std::move(partial[w].max);
            best.argmax = std::move(partial[w].argmax);
            best.argmax_index = partial[w].argmax_index;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Walk expansion on complete colourings:
//   hom(RBR path) + hom(RRR path) = hom(red edge)^2 - sum_v dR(v)^2.
// Ordered pairs of red edges (a, b), (c, d) split by what joins b to c:
// b = c, a red edge, or a blue edge.

struct ExpansionReport {
    std::string host;
    BigInt hom_alternating;  // R, B, R
    BigInt hom_red_path;     // R, R, R
    BigInt hom_red_edge;     // 2 e_R
    BigInt red_two_walks;    // sum of dR^2
    BigInt lhs;
    BigInt rhs;
    bool holds = false;
};

inline EdgeColouredGraph red_path(std::size_t edges) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < edges; ++i) e.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1), Colour::Red});
    return EdgeColouredGraph(edges + 1, std::move(e));
}

inline bool is_complete(const EdgeColouredGraph& g) { return g.num_edges() == pair_count(g.num_vertices()); }

inline ExpansionReport expansion_identity(const EdgeColouredGraph& g) {
    require_valid(g, "expansion_identity");
    if (!is_complete(g)) throw InvalidInput("expansion_identity: host is not a complete colouring");
    ExpansionReport r;
    r.host = describe_host(g);
    r.hom_alternating = hom_forest(alternating_path(3), g);
    r.hom_red_path = hom_forest(red_path(3), g);
    r.hom_red_edge = hom_forest(red_path(1), g);
    const auto stats = degree_stats(g);
    for (auto d : stats.red) r.red_two_walks += BigInt(static_cast<unsigned long>(d)) * static_cast<unsigned long>(d);
    r.lhs = r.hom_alternating + r.hom_red_path;
    r.rhs = r.hom_red_edge * r.hom_red_edge - r.red_two_walks;
    r.holds = r.lhs == r.rhs;
    return r;
}

}  // namespace semind
