#pragma once

// Exact homomorphism counts hom(H, G) and densities t(H, G) = hom / n^{v(H)}.
//
// hom_forest is the workhorse (tree DP, polynomial in both graphs); hom_brute
// enumerates maps and exists as an independent oracle for it.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "semind/ecgraph.hpp"
#include "semind/errors.hpp"
#include "semind/rational.hpp"

namespace semind {

using HomCount = BigInt;
using Density = Rational;

inline constexpr std::uint64_t kDefaultBruteBudget = 100'000'000;

/// h contains a cycle; `cycle()` lists its vertices in order.
class NotAForest : public InvalidInput {
public:
    explicit NotAForest(std::vector<Vertex> cycle) : InvalidInput(describe(cycle)), cycle_(std::move(cycle)) {}
    const std::vector<Vertex>& cycle() const noexcept { return cycle_; }

private:
    static std::string describe(const std::vector<Vertex>& cycle) {
        std::string s = "pattern is not a forest; cycle:";
        for (Vertex v : cycle) s += " " + std::to_string(v);
        return s;
    }
    std::vector<Vertex> cycle_;
};

/// n^k saturated at UINT64_MAX.
inline std::uint64_t saturating_pow(std::uint64_t n, std::uint64_t k) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (n != 0 && out > UINT64_MAX / n) return UINT64_MAX;
        out *= n;
    }
    return out;
}

/// Counts every map V(h) -> V(g) that keeps each edge and its colour.
/// Backtracks in vertex order, checking edges as soon as both ends are placed.
inline HomCount hom_brute(const EdgeColouredGraph& h, const EdgeColouredGraph& g,
                          std::uint64_t budget = kDefaultBruteBudget) {
    require_valid(h, "hom_brute pattern");
    require_valid(g, "hom_brute host");
    const std::size_t vh = h.num_vertices();
    const std::size_t n = g.num_vertices();
    const std::uint64_t maps = saturating_pow(n, vh);
    if (maps > budget) throw BudgetExceeded("hom_brute: n^v(h) maps", maps, budget);
    if (vh == 0) return 1;
    if (n == 0) return 0;

    // back[i] = edges from i to earlier vertices
    std::vector<std::vector<std::pair<Vertex, Colour>>> back(vh);
    for (const Edge& e : h.edges()) back[e.v].push_back({e.u, e.colour});

    const ColourMatrix colours(g);
    std::vector<Vertex> image(vh, 0);
    std::uint64_t count = 0;
    std::size_t depth = 0;
    std::vector<std::size_t> next(vh, 0);
    while (true) {
        if (next[depth] == n) {
            if (depth == 0) break;
            next[depth] = 0;
            --depth;
            continue;
        }
        const auto w = static_cast<Vertex>(next[depth]++);
        bool ok = true;
        for (auto [prev, colour] : back[depth]) {
            if (!colours.has(image[prev], w, colour)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        image[depth] = w;
        if (depth + 1 == vh) {
            ++count;
        } else {
            ++depth;
        }
    }
    return from_u64(count);
}

/// Rooted bottom-up count for forest patterns.
///
/// Each tree is rooted at its smallest vertex and visited breadth first with
/// children in index order. For a vertex v and image w,
///   count(v, w) = prod over children c of sum over colour(c,v)-neighbours w' of w of count(c, w').
/// A tree contributes sum_w count(root, w); isolated vertices contribute n.
inline HomCount hom_forest(const EdgeColouredGraph& h, const EdgeColouredGraph& g) {
    require_valid(h, "hom_forest pattern");
    require_valid(g, "hom_forest host");
    if (auto cycle = find_cycle(h)) throw NotAForest(std::move(*cycle));

    const std::size_t vh = h.num_vertices();
    const std::size_t n = g.num_vertices();
    const Adjacency pattern(h);
    const Adjacency host(g);

    HomCount total = 1;
    constexpr Vertex none = UINT32_MAX;
    std::vector<Vertex> parent(vh, none);
    std::vector<Colour> parent_colour(vh, Colour::Red);
    std::vector<bool> seen(vh, false);
    std::vector<std::vector<HomCount>> count(vh);
    std::vector<Vertex> order;
    std::vector<Vertex> children;

    for (Vertex root = 0; root < vh; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        order.assign(1, root);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const Vertex v = order[head];
            children.clear();
            for (Colour c : {Colour::Red, Colour::Blue}) {
                for (Vertex u : pattern.neighbours(v, c)) {
                    if (!seen[u]) {
                        seen[u] = true;
                        parent[u] = v;
                        parent_colour[u] = c;
                        children.push_back(u);
                    }
                }
            }
            std::sort(children.begin(), children.end());
            order.insert(order.end(), children.begin(), children.end());
        }
        if (order.size() == 1) {
            total *= static_cast<unsigned long>(n);
            continue;
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const Vertex v = *it;
            if (count[v].empty()) count[v].assign(n, HomCount(1));
            if (v == root) break;
            const Vertex p = parent[v];
            if (count[p].empty()) count[p].assign(n, HomCount(1));
            for (Vertex w = 0; w < n; ++w) {
                HomCount s = 0;
                for (Vertex w2 : host.neighbours(w, parent_colour[v])) s += count[v][w2];
                count[p][w] *= s;
            }
            std::vector<HomCount>().swap(count[v]);
        }
        HomCount tree = 0;
        for (const auto& c : count[root]) tree += c;
        std::vector<HomCount>().swap(count[root]);
        total *= tree;
        if (sgn(total) == 0) break;
    }
    return total;
}

/// Exact t(h, g). Forest patterns use the DP; anything else falls back to brute force.
inline Density density(const EdgeColouredGraph& h, const EdgeColouredGraph& g,
                       std::uint64_t brute_budget = kDefaultBruteBudget) {
    if (g.num_vertices() == 0) throw InvalidInput("density: undefined for a host with no vertices");
    const HomCount hom = is_forest(h) ? hom_forest(h, g) : hom_brute(h, g, brute_budget);
    return make_rational(hom, pow_int(g.num_vertices(), h.num_vertices()));
}

/// Maximum of x^a y^b over x, y >= 0 with x + y <= m, i.e. m^{a+b} a^a b^b / (a+b)^{a+b}.
inline Rational weighted_ab_bound(std::uint64_t a, std::uint64_t b, const Rational& m) {
    if (a == 0 || b == 0 || sgn(m) <= 0) throw InvalidInput("weighted_ab_bound: a, b, m must be positive");
    const BigInt num = pow_int(a, a) * pow_int(b, b);
    const BigInt den = pow_int(a + b, a + b);
    return pow_rat(m, a + b) * make_rational(num, den);
}

}  // namespace semind
