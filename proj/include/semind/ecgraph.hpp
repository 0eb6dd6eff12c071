#pragma once

// Two-edge-coloured simple graphs: the data model shared by patterns and hosts,
// plus degree statistics, host generators and the .ecg text format.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "semind/errors.hpp"

namespace semind {

using Vertex = std::uint32_t;

enum class Colour : std::uint8_t { Red = 0, Blue = 1 };

constexpr char colour_letter(Colour c) { return c == Colour::Red ? 'R' : 'B'; }
constexpr Colour other(Colour c) { return c == Colour::Red ? Colour::Blue : Colour::Red; }

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    Colour colour = Colour::Red;

    friend constexpr bool operator==(const Edge&, const Edge&) = default;
    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple loopless graph on 0..n-1 whose edges are red or blue.
///
/// The two-argument constructor stores its input verbatim so that `validate`
/// can report what is wrong with it; `from_edges` is the checked entry point
/// that orients pairs, sorts by (u, v) and rejects anything invalid.
class EdgeColouredGraph {
public:
    EdgeColouredGraph() = default;
    EdgeColouredGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {}

    static EdgeColouredGraph from_edges(std::size_t n, std::vector<Edge> edges);

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::size_t count(Colour c) const {
        return static_cast<std::size_t>(
            std::count_if(edges_.begin(), edges_.end(), [c](const Edge& e) { return e.colour == c; }));
    }
    std::size_t red_edges() const { return count(Colour::Red); }
    std::size_t blue_edges() const { return count(Colour::Blue); }

    /// Colour of the pair {a, b}, if it is an edge. Binary search on the sorted edge list.
    std::optional<Colour> colour_of(Vertex a, Vertex b) const {
        if (a > b) std::swap(a, b);
        const Edge probe{a, b, Colour::Red};
        auto it = std::lower_bound(edges_.begin(), edges_.end(), probe, [](const Edge& x, const Edge& y) {
            return std::tie(x.u, x.v) < std::tie(y.u, y.v);
        });
        if (it != edges_.end() && it->u == a && it->v == b) return it->colour;
        return std::nullopt;
    }

    friend bool operator==(const EdgeColouredGraph&, const EdgeColouredGraph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

/// Returns nothing when every invariant holds, otherwise names the first violation.
inline std::optional<std::string> validate(const EdgeColouredGraph& g) {
    const auto n = g.num_vertices();
    const Edge* prev = nullptr;
    for (const Edge& e : g.edges()) {
        const std::string where = " at edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
        if (e.u >= n || e.v >= n) return "vertex index out of range" + where;
        if (e.u == e.v) return "loopless" + where;
        if (e.u > e.v) return "u<v required" + where;
        if (e.colour != Colour::Red && e.colour != Colour::Blue) return "unknown colour" + where;
        if (prev != nullptr) {
            if (prev->u == e.u && prev->v == e.v) return "duplicate pair" + where;
            if (std::tie(prev->u, prev->v) > std::tie(e.u, e.v)) return "edges not sorted by (u,v)" + where;
        }
        prev = &e;
    }
    return std::nullopt;
}

inline void require_valid(const EdgeColouredGraph& g, const char* context) {
    if (auto why = validate(g)) throw InvalidInput(std::string(context) + ": invalid graph: " + *why);
}

inline EdgeColouredGraph EdgeColouredGraph::from_edges(std::size_t n, std::vector<Edge> edges) {
    for (Edge& e : edges) {
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    EdgeColouredGraph g(n, std::move(edges));
    require_valid(g, "from_edges");
    return g;
}

/// Colour-partitioned neighbour lists in CSR form.
class Adjacency {
public:
    explicit Adjacency(const EdgeColouredGraph& g) {
        const auto n = g.num_vertices();
        for (int c = 0; c < 2; ++c) offsets_[c].assign(n + 1, 0);
        for (const Edge& e : g.edges()) {
            auto& off = offsets_[static_cast<int>(e.colour)];
            ++off[e.u + 1];
            ++off[e.v + 1];
        }
        for (int c = 0; c < 2; ++c) {
            std::partial_sum(offsets_[c].begin(), offsets_[c].end(), offsets_[c].begin());
            targets_[c].resize(offsets_[c].back());
        }
        std::vector<std::size_t> fill[2] = {
            std::vector<std::size_t>(offsets_[0].begin(), offsets_[0].end() - (n > 0 ? 1 : 0)),
            std::vector<std::size_t>(offsets_[1].begin(), offsets_[1].end() - (n > 0 ? 1 : 0))};
        for (const Edge& e : g.edges()) {
            const int c = static_cast<int>(e.colour);
            targets_[c][fill[c][e.u]++] = e.v;
            targets_[c][fill[c][e.v]++] = e.u;
        }
        for (int c = 0; c < 2; ++c) {
            for (std::size_t v = 0; v < n; ++v) {
                std::sort(targets_[c].begin() + static_cast<std::ptrdiff_t>(offsets_[c][v]),
                          targets_[c].begin() + static_cast<std::ptrdiff_t>(offsets_[c][v + 1]));
            }
        }
    }

    std::span<const Vertex> neighbours(Vertex v, Colour c) const {
        const int ci = static_cast<int>(c);
        return std::span<const Vertex>(targets_[ci]).subspan(offsets_[ci][v], offsets_[ci][v + 1] - offsets_[ci][v]);
    }
    std::size_t degree(Vertex v, Colour c) const { return neighbours(v, c).size(); }
    std::size_t degree(Vertex v) const { return degree(v, Colour::Red) + degree(v, Colour::Blue); }

private:
    std::vector<std::size_t> offsets_[2];
    std::vector<Vertex> targets_[2];
};

/// Dense n x n colour table: 0 = absent, 1 = red, 2 = blue. For small hosts.
class ColourMatrix {
public:
    explicit ColourMatrix(const EdgeColouredGraph& g) : n_(g.num_vertices()), cells_(n_ * n_, 0) {
        for (const Edge& e : g.edges()) {
            const auto code = static_cast<std::uint8_t>(static_cast<int>(e.colour) + 1);
            cells_[e.u * n_ + e.v] = code;
            cells_[e.v * n_ + e.u] = code;
        }
    }
    bool has(Vertex a, Vertex b, Colour c) const {
        return cells_[a * n_ + b] == static_cast<std::uint8_t>(static_cast<int>(c) + 1);
    }
    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    std::vector<std::uint8_t> cells_;
};

struct DegreeStats {
    std::vector<std::uint64_t> red;        // dR(v)
    std::vector<std::uint64_t> blue;       // dB(v)
    std::vector<std::uint64_t> red_blue;   // walks v -red- a -blue- b
    std::vector<std::uint64_t> blue_blue;  // walks v -blue- a -blue- b, b = v allowed
    std::uint64_t red_edges = 0;
    std::uint64_t blue_edges = 0;
};

/// Degree and two-walk statistics. Walks are homomorphic images of a 2-edge
/// path, so a blue-blue walk may step back along the edge it arrived on.
inline DegreeStats degree_stats(const EdgeColouredGraph& g) {
    require_valid(g, "degree_stats");
    const auto n = g.num_vertices();
    DegreeStats s;
    s.red.assign(n, 0);
    s.blue.assign(n, 0);
    s.red_blue.assign(n, 0);
    s.blue_blue.assign(n, 0);
    for (const Edge& e : g.edges()) {
        auto& d = e.colour == Colour::Red ? s.red : s.blue;
        ++d[e.u];
        ++d[e.v];
        ++(e.colour == Colour::Red ? s.red_edges : s.blue_edges);
    }
    for (const Edge& e : g.edges()) {
        auto& walks = e.colour == Colour::Red ? s.red_blue : s.blue_blue;
        walks[e.u] += s.blue[e.v];
        walks[e.v] += s.blue[e.u];
    }
    return s;
}

/// Complete graph on n vertices; (u, v) is red iff (v - u) mod n is a red residue.
inline EdgeColouredGraph circulant_host(std::size_t n, const std::vector<std::size_t>& red_residues) {
    std::vector<bool> red(n, false);
    for (std::size_t r : red_residues) {
        if (r == 0 || r >= n) throw InvalidInput("circulant_host: residue " + std::to_string(r) + " not in 1..n-1");
        red[r] = true;
    }
    for (std::size_t r = 1; r < n; ++r) {
        if (red[r] != red[n - r]) {
            throw InvalidInput("circulant_host: residue set not closed under negation (" + std::to_string(r) + ")");
        }
    }
    std::vector<Edge> edges;
    edges.reserve(n * (n > 0 ? n - 1 : 0) / 2);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), red[v - u] ? Colour::Red : Colour::Blue});
        }
    }
    return EdgeColouredGraph(n, std::move(edges));
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration. Each unordered pair, in (u, v) order, is one base-3
// digit (0 absent, 1 red, 2 blue); the pair (0, 1) is the least significant.

inline std::size_t pair_count(std::size_t n) { return n * (n > 0 ? n - 1 : 0) / 2; }

inline std::uint64_t host_count(std::size_t n) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < pair_count(n); ++i) {
        if (total > UINT64_MAX / 3) throw InvalidInput("host_count: 3^(n(n-1)/2) overflows 64 bits");
        total *= 3;
    }
    return total;
}

class HostEnumerator {
public:
    HostEnumerator(std::size_t n, std::uint64_t start) : n_(n), index_(start), total_(host_count(n)) {
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) pairs_.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
        digits_.assign(pairs_.size(), 0);
        std::uint64_t rest = start;
        for (auto& d : digits_) {
            d = static_cast<std::uint8_t>(rest % 3);
            rest /= 3;
        }
    }

    bool done() const noexcept { return index_ >= total_; }
    std::uint64_t index() const noexcept { return index_; }

    EdgeColouredGraph current() const {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (digits_[i] != 0) {
                edges.push_back({pairs_[i].first, pairs_[i].second, digits_[i] == 1 ? Colour::Red : Colour::Blue});
            }
        }
        return EdgeColouredGraph(n_, std::move(edges));
    }

    void advance() {
        ++index_;
        for (auto& d : digits_) {
            if (++d < 3) return;
            d = 0;
        }
    }

private:
    std::size_t n_;
    std::uint64_t index_;
    std::uint64_t total_;
    std::vector<std::pair<Vertex, Vertex>> pairs_;
    std::vector<std::uint8_t> digits_;
};

inline EdgeColouredGraph host_at(std::size_t n, std::uint64_t index) {
    if (index >= host_count(n)) throw InvalidInput("host_at: index beyond 3^(n(n-1)/2)");
    return HostEnumerator(n, index).current();
}

/// Calls fn(index, graph) for every host with index in [begin, end).
template <class Fn>
void for_each_host(std::size_t n, std::uint64_t begin, std::uint64_t end, Fn&& fn) {
    HostEnumerator it(n, begin);
    for (; !it.done() && it.index() < end; it.advance()) fn(it.index(), it.current());
}

/// Each pair independently absent, red or blue with probability 1/3.
template <class Rng>
EdgeColouredGraph random_host(std::size_t n, Rng& rng) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const auto state = rng() % 3;
            if (state != 0) {
                edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), state == 1 ? Colour::Red : Colour::Blue});
            }
        }
    }
    return EdgeColouredGraph(n, std::move(edges));
}

/// Complete colouring where each pair is red or blue with probability 1/2.
template <class Rng>
EdgeColouredGraph random_complete_host(std::size_t n, Rng& rng) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), (rng() & 1U) ? Colour::Blue : Colour::Red});
    return EdgeColouredGraph(n, std::move(edges));
}

/// Vertices of `b` are shifted past those of `a`.
inline EdgeColouredGraph disjoint_union(const EdgeColouredGraph& a, const EdgeColouredGraph& b) {
    std::vector<Edge> edges(a.edges().begin(), a.edges().end());
    const auto shift = static_cast<Vertex>(a.num_vertices());
    for (const Edge& e : b.edges()) edges.push_back({e.u + shift, e.v + shift, e.colour});
    return EdgeColouredGraph(a.num_vertices() + b.num_vertices(), std::move(edges));
}

// ---------------------------------------------------------------------------
// Forest check shared by homcount and constructions.

/// Vertices of some cycle, or nothing if g is a forest.
inline std::optional<std::vector<Vertex>> find_cycle(const EdgeColouredGraph& g) {
    const auto n = g.num_vertices();
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    const auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Vertex a = find(edges[i].u);
        const Vertex b = find(edges[i].v);
        if (a != b) {
            parent[a] = b;
            continue;
        }
        // edges[0..i) form a forest containing a u-v path; recover it by BFS.
        EdgeColouredGraph prefix(n, std::vector<Edge>(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(i)));
        const Adjacency adj(prefix);
        constexpr Vertex none = UINT32_MAX;
        std::vector<Vertex> from(n, none);
        std::vector<Vertex> queue{edges[i].u};
        from[edges[i].u] = edges[i].u;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex x = queue[head];
            for (Colour c : {Colour::Red, Colour::Blue}) {
                for (Vertex y : adj.neighbours(x, c)) {
                    if (from[y] == none) {
                        from[y] = x;
                        queue.push_back(y);
                    }
                }
            }
        }
        std::vector<Vertex> cycle;
        for (Vertex x = edges[i].v; x != edges[i].u; x = from[x]) cycle.push_back(x);
        cycle.push_back(edges[i].u);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
    }
    return std::nullopt;
}

inline bool is_forest(const EdgeColouredGraph& g) { return !find_cycle(g).has_value(); }

// ---------------------------------------------------------------------------
// .ecg text format:  "ecg 1" / "n <N>" / one "e <u> <v> <R|B>" line per edge.

inline void write_ecg(std::ostream& out, const EdgeColouredGraph& g) {
    out << "ecg 1\n" << "n " << g.num_vertices() << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << ' ' << colour_letter(e.colour) << '\n';
}

inline std::string to_ecg_string(const EdgeColouredGraph& g) {
    std::ostringstream out;
    write_ecg(out, g);
    return out.str();
}

inline EdgeColouredGraph read_ecg(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& why) -> InvalidInput {
        return InvalidInput("ecg line " + std::to_string(line_no) + ": " + why);
    };
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++line_no;
        return true;
    };
    if (!next_line() || line != "ecg 1") throw fail("expected header 'ecg 1'");
    if (!next_line()) throw fail("missing vertex count line");
    std::size_t n = 0;
    {
        std::istringstream ls(line);
        std::string tag;
        long long count = -1;
        if (!(ls >> tag >> count) || tag != "n" || !(ls >> std::ws).eof()) throw fail("expected 'n <N>'");
        if (count < 0 || count > static_cast<long long>(UINT32_MAX)) throw fail("vertex count out of range");
        n = static_cast<std::size_t>(count);
    }
    std::vector<Edge> edges;
    while (next_line()) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag, colour;
        long long u = -1, v = -1;
        if (!(ls >> tag >> u >> v >> colour) || tag != "e" || !(ls >> std::ws).eof()) throw fail("expected 'e <u> <v> <R|B>'");
        if (colour != "R" && colour != "B") throw fail("colour must be R or B");
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
            throw fail("vertex index out of range");
        }
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), colour == "R" ? Colour::Red : Colour::Blue});
    }
    EdgeColouredGraph g(n, std::move(edges));
    if (auto why = validate(g)) throw InvalidInput("ecg: " + *why);
    return g;
}

inline EdgeColouredGraph parse_ecg(const std::string& text) {
    std::istringstream in(text);
    return read_ecg(in);
}

inline EdgeColouredGraph read_ecg_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    return read_ecg(in);
}

inline void write_ecg_file(const std::string& path, const EdgeColouredGraph& g) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    write_ecg(out, g);
}

}  // namespace semind
