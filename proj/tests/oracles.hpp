#pragma once

// Independent reference implementations and random generators for tests.
// Deliberately naive: full map enumeration, explicit walk listing.

#include <cstdint>
#include <random>
#include <vector>

#include "semind/ecgraph.hpp"
#include "semind/rational.hpp"

namespace oracle {

using semind::BigInt;
using semind::Colour;
using semind::Edge;
using semind::EdgeColouredGraph;
using semind::Vertex;

// Every map V(h) -> V(g), checked edge by edge against the sorted edge list.
inline std::uint64_t hom_all_maps(const EdgeColouredGraph& h, const EdgeColouredGraph& g) {
    const std::size_t vh = h.num_vertices(), n = g.num_vertices();
    if (vh == 0) return 1;
    if (n == 0) return 0;
    std::vector<Vertex> map(vh, 0);
    std::uint64_t count = 0;
    while (true) {
        bool ok = true;
        for (const Edge& e : h.edges()) {
            if (g.colour_of(map[e.u], map[e.v]) != e.colour) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
        std::size_t i = 0;
        while (i < vh && ++map[i] == n) map[i++] = 0;
        if (i == vh) break;
    }
    return count;
}

inline EdgeColouredGraph random_graph(std::size_t n, double p_edge, std::mt19937_64& rng) {
    std::bernoulli_distribution present(p_edge), blue(0.5);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (present(rng)) edges.push_back({u, v, blue(rng) ? Colour::Blue : Colour::Red});
        }
    }
    return EdgeColouredGraph(n, std::move(edges));
}

// Random forest: each vertex after the first joins an earlier one or starts a new tree.
inline EdgeColouredGraph random_forest(std::size_t n, std::mt19937_64& rng, double p_new_tree = 0.2) {
    std::bernoulli_distribution fresh(p_new_tree), blue(0.5);
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v) {
        if (fresh(rng)) continue;
        const auto u = static_cast<Vertex>(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
        edges.push_back({u, v, blue(rng) ? Colour::Blue : Colour::Red});
    }
    return EdgeColouredGraph::from_edges(n, std::move(edges));
}

inline EdgeColouredGraph graph_of(std::size_t n, std::vector<Edge> edges) {
    return EdgeColouredGraph::from_edges(n, std::move(edges));
}

}  // namespace oracle
