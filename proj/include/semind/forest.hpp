#pragma once

// Labelled forests: an edge-coloured forest together with per-vertex roles and
// a homomorphism phi onto the alternating spine path P_L^A.

#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semind/ecgraph.hpp"
#include "semind/errors.hpp"
#include "semind/rational.hpp"

namespace semind {

/// Colour of the spine edge (i, i+1): the path starts red and alternates.
constexpr Colour spine_colour(std::size_t i) { return i % 2 == 0 ? Colour::Red : Colour::Blue; }

/// The unique c-coloured neighbour of spine vertex j in P_L^A, if any.
constexpr std::optional<std::uint32_t> spine_neighbour(std::size_t length, std::uint32_t j, Colour c) {
    // Edge (j, j+1) has colour spine_colour(j); edge (j-1, j) has spine_colour(j-1).
    if (j < length && spine_colour(j) == c) return j + 1;
    if (j > 0 && j <= length && spine_colour(j - 1) == c) return j - 1;
    return std::nullopt;
}

/// The vectors x (length 2k+2), y (length 2k+1), z (length 2k+2). Reads
/// outside the stored range are zero.
struct SequenceTriple {
    std::size_t k = 0;
    std::vector<BigInt> x;
    std::vector<BigInt> y;
    std::vector<BigInt> z;

    static BigInt at(const std::vector<BigInt>& v, long long i) {
        if (i < 0 || static_cast<std::size_t>(i) >= v.size()) return 0;
        return v[static_cast<std::size_t>(i)];
    }
    BigInt x_at(long long i) const { return at(x, i); }
    BigInt y_at(long long i) const { return at(y, i); }
    BigInt z_at(long long i) const { return at(z, i); }

    friend bool operator==(const SequenceTriple&, const SequenceTriple&) = default;
};

/// Shape, sign and mirror-symmetry check; nothing means the triple is well formed.
inline std::optional<std::string> check_sequence_triple(const SequenceTriple& s) {
    const std::size_t k = s.k;
    if (k == 0) return "k must be positive";
    if (s.x.size() != 2 * k + 2 || s.y.size() != 2 * k + 1 || s.z.size() != 2 * k + 2) return "wrong vector lengths";
    auto check = [](const std::vector<BigInt>& v, char name) -> std::optional<std::string> {
        const std::size_t last = v.size() - 1;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (sgn(v[i]) < 0) return std::string(1, name) + "_" + std::to_string(i) + " is negative";
            if (v[i] != v[last - i]) return std::string(1, name) + " is not symmetric at index " + std::to_string(i);
        }
        return std::nullopt;
    };
    if (auto e = check(s.x, 'x')) return e;
    if (auto e = check(s.y, 'y')) return e;
    if (auto e = check(s.z, 'z')) return e;
    return std::nullopt;
}

enum class RoleKind : std::uint8_t { Spine, XR, XB, Yminus, Yplus, ZR, ZRB, ZB, ZBB, IsolatedAux };

inline constexpr std::array<std::string_view, 10> kRoleNames = {"Spine", "XR", "XB", "Yminus", "Yplus",
                                                                "ZR", "ZRB", "ZB", "ZBB", "IsolatedAux"};

constexpr std::string_view role_name(RoleKind r) { return kRoleNames[static_cast<std::size_t>(r)]; }

inline RoleKind parse_role(std::string_view name) {
    for (std::size_t i = 0; i < kRoleNames.size(); ++i) {
        if (kRoleNames[i] == name) return static_cast<RoleKind>(i);
    }
    throw InvalidInput("unknown role '" + std::string(name) + "'");
}

/// Role of a vertex and the spine index j of the class it belongs to.
struct VertexRole {
    RoleKind kind = RoleKind::Spine;
    std::uint32_t j = 0;

    friend bool operator==(const VertexRole&, const VertexRole&) = default;
};

struct LabelledForest {
    EdgeColouredGraph graph;
    std::size_t spine_length = 0;  // phi maps onto P_L^A with vertices 0..L
    std::vector<VertexRole> roles;
    std::vector<std::uint32_t> phi;
};

inline constexpr std::uint32_t kUnmapped = UINT32_MAX;

/// Anchored image of a role, if the role pins one down by itself.
inline std::optional<std::uint32_t> anchored_image(const VertexRole& r) {
    switch (r.kind) {
        case RoleKind::Spine:
        case RoleKind::Yminus:
        case RoleKind::IsolatedAux:
            return r.j;
        case RoleKind::Yplus:
            return r.j + 1;
        default:
            return std::nullopt;
    }
}

/// Recomputes phi from the anchored roles by following edge colours.
///
/// Every spine vertex has at most one neighbour of each colour, so an anchored
/// component admits at most one extension; this function never guesses. It
/// throws if a vertex is left without an anchor, if a required colour is
/// missing at some spine vertex, or if two constraints disagree.
inline std::vector<std::uint32_t> propagate_phi(const EdgeColouredGraph& graph, const std::vector<VertexRole>& roles,
                                                std::size_t spine_length) {
    const std::size_t n = graph.num_vertices();
    if (roles.size() != n) throw InvalidInput("propagate_phi: one role per vertex required");
    std::vector<std::uint32_t> phi(n, kUnmapped);
    for (std::size_t v = 0; v < n; ++v) {
        if (auto a = anchored_image(roles[v])) {
            if (*a > spine_length) throw InvalidInput("propagate_phi: anchor beyond the spine at vertex " + std::to_string(v));
            phi[v] = *a;
        }
    }
    auto step = [&](Vertex from, Vertex to, Colour c) {
        const auto image = spine_neighbour(spine_length, phi[from], c);
        if (!image) {
            throw InvalidInput("propagate_phi: no " + std::string(1, colour_letter(c)) + " spine edge at v_" +
                               std::to_string(phi[from]) + " for vertex " + std::to_string(to));
        }
        phi[to] = *image;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (const Edge& e : graph.edges()) {
            const bool known_u = phi[e.u] != kUnmapped;
            const bool known_v = phi[e.v] != kUnmapped;
            if (known_u && !known_v) {
                step(e.u, e.v, e.colour);
                changed = true;
            } else if (known_v && !known_u) {
                step(e.v, e.u, e.colour);
                changed = true;
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (phi[v] == kUnmapped) throw InvalidInput("propagate_phi: vertex " + std::to_string(v) + " has no anchor");
    }
    for (const Edge& e : graph.edges()) {
        if (spine_neighbour(spine_length, phi[e.u], e.colour) != phi[e.v]) {
            throw InvalidInput("propagate_phi: conflicting images on edge (" + std::to_string(e.u) + "," +
                               std::to_string(e.v) + ")");
        }
    }
    return phi;
}

/// First edge that phi fails to send onto a same-coloured spine edge.
inline std::optional<Edge> phi_violation(const LabelledForest& f) {
    if (f.phi.size() != f.graph.num_vertices()) return Edge{};
    for (const Edge& e : f.graph.edges()) {
        if (f.phi[e.u] > f.spine_length || f.phi[e.v] > f.spine_length) return e;
        if (spine_neighbour(f.spine_length, f.phi[e.u], e.colour) != f.phi[e.v]) return e;
    }
    return std::nullopt;
}

/// Raw preimage counts |phi^-1(v_j)| and |phi^-1(v_j v_{j+1})|; phi must be valid.
inline std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> tally_preimages(const LabelledForest& f) {
    std::vector<std::uint64_t> vertices(f.spine_length + 1, 0);
    std::vector<std::uint64_t> edges(f.spine_length, 0);
    for (std::uint32_t image : f.phi) ++vertices[image];
    for (const Edge& e : f.graph.edges()) ++edges[std::min(f.phi[e.u], f.phi[e.v])];
    return {std::move(vertices), std::move(edges)};
}

/// Incremental builder for small forests: appends vertices and edges in any
/// order, then sorts and derives phi.
class ForestBuilder {
public:
    explicit ForestBuilder(std::size_t spine_length) : spine_length_(spine_length) {
        for (std::uint32_t j = 0; j <= spine_length; ++j) add_vertex({RoleKind::Spine, j});
        for (std::uint32_t j = 0; j < spine_length; ++j) edges_.push_back({j, j + 1, spine_colour(j)});
    }

    Vertex add_vertex(VertexRole role) {
        roles_.push_back(role);
        return static_cast<Vertex>(roles_.size() - 1);
    }

    /// `count` leaves hanging off spine vertex j by an edge of colour c.
    void add_leaves(std::uint32_t j, Colour c, std::size_t count, RoleKind role) {
        for (std::size_t i = 0; i < count; ++i) edges_.push_back({j, add_vertex({role, j}), c});
    }

    /// `count` two-edge pendant paths j -first- a -second- b.
    void add_pendant_paths(std::uint32_t j, Colour first, Colour second, std::size_t count, RoleKind mid_role,
                           RoleKind end_role) {
        for (std::size_t i = 0; i < count; ++i) {
            const Vertex a = add_vertex({mid_role, j});
            const Vertex b = add_vertex({end_role, j});
            edges_.push_back({j, a, first});
            edges_.push_back({a, b, second});
        }
    }

    /// `count` isolated copies of spine edge (j, j+1).
    void add_isolated_edges(std::uint32_t j, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) {
            const Vertex a = add_vertex({RoleKind::Yminus, j});
            const Vertex b = add_vertex({RoleKind::Yplus, j});
            edges_.push_back({a, b, spine_colour(j)});
        }
    }

    void add_isolated_vertices(std::uint32_t j, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) add_vertex({RoleKind::IsolatedAux, j});
    }

    LabelledForest build() const {
        LabelledForest f;
        f.graph = EdgeColouredGraph::from_edges(roles_.size(), edges_);
        f.spine_length = spine_length_;
        f.roles = roles_;
        f.phi = propagate_phi(f.graph, f.roles, spine_length_);
        return f;
    }

private:
    std::size_t spine_length_;
    std::vector<VertexRole> roles_;
    std::vector<Edge> edges_;
};

// ---------------------------------------------------------------------------
// Role sidecar: one line "v <index> <role> <j> <phi>" per vertex.

inline void write_roles(std::ostream& out, const LabelledForest& f) {
    for (std::size_t v = 0; v < f.roles.size(); ++v) {
        out << "v " << v << ' ' << role_name(f.roles[v].kind) << ' ' << f.roles[v].j << ' ' << f.phi[v] << '\n';
    }
}

inline void write_roles_file(const std::string& path, const LabelledForest& f) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    write_roles(out, f);
}

/// Reads a sidecar for `graph`; phi is taken as written and checked for validity.
inline LabelledForest read_labelled_forest(EdgeColouredGraph graph, std::istream& roles_in) {
    LabelledForest f;
    const std::size_t n = graph.num_vertices();
    f.roles.assign(n, {});
    f.phi.assign(n, kUnmapped);
    std::vector<bool> seen(n, false);
    std::string line;
    std::size_t line_no = 0;
    std::size_t spine_vertices = 0;
    while (std::getline(roles_in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag, role;
        std::size_t index = 0;
        std::uint32_t j = 0, image = 0;
        if (!(ls >> tag >> index >> role >> j >> image) || tag != "v" || index >= n || seen[index]) {
            throw InvalidInput("roles line " + std::to_string(line_no) + ": expected 'v <index> <role> <j> <phi>'");
        }
        seen[index] = true;
        f.roles[index] = {parse_role(role), j};
        f.phi[index] = image;
        if (f.roles[index].kind == RoleKind::Spine) ++spine_vertices;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!seen[v]) throw InvalidInput("roles: vertex " + std::to_string(v) + " missing");
    }
    if (spine_vertices == 0) throw InvalidInput("roles: no spine vertices");
    f.spine_length = spine_vertices - 1;
    f.graph = std::move(graph);
    if (auto bad = phi_violation(f)) {
        throw InvalidInput("roles: phi does not preserve edge (" + std::to_string(bad->u) + "," + std::to_string(bad->v) + ")");
    }
    return f;
}

inline LabelledForest read_labelled_forest_files(const std::string& ecg_path, const std::string& roles_path) {
    std::ifstream in(roles_path);
    if (!in) throw InvalidInput("cannot open " + roles_path);
    return read_labelled_forest(read_ecg_file(ecg_path), in);
}

}  // namespace semind
