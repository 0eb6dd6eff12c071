#pragma once

// Patterns: alternating paths, the explicit sequences x, y, z, the forests
// H_{2k+1} built from them, the even-length forests H_{2k}, and small
// hand-built fixtures.

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "semind/ecgraph.hpp"
#include "semind/errors.hpp"
#include "semind/forest.hpp"
#include "semind/rational.hpp"

namespace semind {

/// P_L^A on vertices 0..L; edge (i, i+1) is red for even i.
inline EdgeColouredGraph alternating_path(std::size_t length) {
    if (length == 0) throw InvalidInput("alternating_path: length must be at least 1");
    std::vector<Edge> edges;
    edges.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1), spine_colour(i)});
    }
    return EdgeColouredGraph(length + 1, std::move(edges));
}

/// Target value k(k+1)^2(2k+1) of every cover sum.
inline BigInt cover_target(std::size_t k) {
    const BigInt kk = static_cast<unsigned long>(k);
    return kk * (kk + 1) * (kk + 1) * (2 * kk + 1);
}

namespace detail {

using Slot = std::optional<Rational>;

inline Rational q(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Left half of the sequences; the right half is the mirror image.
inline void fill_left_half(long k, std::vector<Slot>& x, std::vector<Slot>& y, std::vector<Slot>& z) {
    if (k == 1) {
        x[0] = q(0), x[1] = q(4);
        y[0] = q(2), y[1] = q(2);
        z[0] = q(0), z[1] = q(0);
        return;
    }
    if (k == 2) {
        x[0] = q(0), x[1] = q(16), x[2] = q(10);
        y[0] = q(14), y[1] = q(1), y[2] = q(0);
        z[0] = q(0), z[1] = q(0), z[2] = q(5);
        return;
    }
    if (k == 3) {
        x[0] = q(0), x[1] = q(48), x[2] = q(40), x[3] = q(28);
        y[0] = q(36), y[1] = q(4), y[2] = q(2), y[3] = q(0);
        z[0] = q(0), z[1] = q(0), z[2] = q(0), z[3] = q(14);
        return;
    }
    if (k % 2 == 1) {
        for (long i = 0; i <= (k - 5) / 4; ++i) {
            x[4 * i] = i == 0 ? q(0) : q((k + 1) * (k * k - i));
            x[4 * i + 1] = q((k + 1) * (k * k + k - i));
            x[4 * i + 2] = q((k + 1) * (k * k + i));
            x[4 * i + 3] = q((k + 1) * (k * k - k + i));
            y[4 * i] = i == 0 ? q(k * k * (k + 1)) : q(i);
            y[4 * i + 1] = q(0);
            y[4 * i + 2] = q(k - i);
            y[4 * i + 3] = q(0);
            z[4 * i] = q((2 * k + 1) * i);
            z[4 * i + 1] = q(0);
            z[4 * i + 2] = q(0);
            z[4 * i + 3] = q((2 * k + 1) * (k - i));
        }
        if (k % 4 == 1) {
            x[k - 1] = q(4 * k * k * k + 3 * k * k + 1, 4);
            y[k - 1] = q(k - 1, 4);
            z[k - 1] = q((k - 1) * (2 * k + 1), 4);
            x[k] = q(4 * k * k * k + 7 * k * k + 4 * k + 1, 4);
            y[k] = q((k + 1) * (k + 1), 2);
            z[k] = q(0);
        } else {
            x[k - 3] = q(4 * k * k * k + 3 * k * k + 2 * k + 3, 4);
            y[k - 3] = q(k - 3, 4);
            z[k - 3] = q((2 * k + 1) * (k - 3), 4);
            x[k - 2] = q(4 * k * k * k + 7 * k * k + 6 * k + 3, 4);
            y[k - 2] = q((k + 1) * (k + 1), 4);
            z[k - 2] = q(0);
            x[k - 1] = q(2 * k * k * k + 3 * k * k - 1, 2);
            y[k - 1] = q(k + 1, 2);
            z[k - 1] = q(0);
            x[k] = q(2 * k * k * k + k * k - 2 * k - 1, 2);
            y[k] = q(0);
            z[k] = q(2 * k * k + 3 * k + 1, 2);
        }
        return;
    }
    for (long i = 0; i <= (k - 4) / 4; ++i) {
        x[4 * i] = i == 0 ? q(0) : q(k * (k * k + k + i));
        x[4 * i + 1] = q(k * ((k + 1) * (k + 1) - i));
        x[4 * i + 2] = q(k * (k * k + k - i));
        x[4 * i + 3] = q(k * (k * k + i));
        y[4 * i] = i == 0 ? q(k * k * (k + 1)) : q(0);
        y[4 * i + 1] = q(i);
        y[4 * i + 2] = q(0);
        y[4 * i + 3] = q(k - i);
        z[4 * i] = q(0);
        z[4 * i + 1] = q(0);
        z[4 * i + 2] = q((2 * k + 1) * i);
        z[4 * i + 3] = q((2 * k + 1) * (k - i));
    }
    if (k % 4 == 0) {
        x[k] = q(k * k * (4 * k + 5), 4);
        y[k] = q((k + 2) * k, 2);
        z[k] = q(0);
    } else {
        x[k - 2] = q((4 * k * k + 5 * k - 2) * k, 4);
        y[k - 2] = q((k + 2) * k, 4);
        z[k - 2] = q(0);
        x[k - 1] = q((2 * k * k + 3 * k + 2) * k, 2);
        y[k - 1] = q(k, 2);
        z[k - 1] = q(0);
        x[k] = q(k * k * (2 * k + 1), 2);
        y[k] = q(0);
        z[k] = q((2 * k + 1) * k, 2);
    }
}

inline std::vector<BigInt> mirror_and_round(std::vector<Slot>& v, std::size_t k, char name) {
    const std::size_t last = v.size() - 1;
    for (std::size_t i = 0; i <= k; ++i) {
        if (!v[i]) throw std::logic_error(std::string("sequences: ") + name + "_" + std::to_string(i) + " undefined");
        v[last - i] = v[i];
    }
    std::vector<BigInt> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i]->get_den() != 1 || sgn(*v[i]) < 0) {
            throw std::logic_error(std::string("sequences: ") + name + "_" + std::to_string(i) + " = " +
                                   to_fraction_string(*v[i]) + " is not a nonnegative integer");
        }
        out.push_back(v[i]->get_num());
    }
    return out;
}

}  // namespace detail

/// The explicit x, y, z for H_{2k+1}. Entries are computed as exact rationals
/// and must come out as nonnegative integers.
inline SequenceTriple sequences(std::size_t k) {
    if (k == 0) throw InvalidInput("sequences: k must be at least 1");
    if (k > 100000) throw InvalidInput("sequences: k too large");
    std::vector<detail::Slot> x(2 * k + 2), y(2 * k + 1), z(2 * k + 2);
    detail::fill_left_half(static_cast<long>(k), x, y, z);
    SequenceTriple s;
    s.k = k;
    s.x = detail::mirror_and_round(x, k, 'x');
    s.y = detail::mirror_and_round(y, k, 'y');
    s.z = detail::mirror_and_round(z, k, 'z');
    return s;
}

/// Builds H_{2k+1} from a triple, emitting vertices in class order
/// (spine, then per j: XR, XB, ZR, ZRB, ZB, ZBB, Yminus, Yplus) so that the
/// edge list comes out already sorted. phi is derived by propagation.
/// Vertex count of the X/Y/Z construction for s, without building it.
inline BigInt forest_size(const SequenceTriple& s) {
    const std::size_t k = s.k;
    BigInt n = from_u64(2 * k + 2);
    for (const auto& v : s.x) n += from_u64(2 * k + 1) * v;
    for (const auto& v : s.y) n += from_u64(2 * k + 2) * v;
    for (const auto& v : s.z) n += from_u64(4 * k + 2) * v;
    return n;
}

inline LabelledForest build_from_sequences(const SequenceTriple& s, std::uint64_t max_vertices = UINT32_MAX) {
    if (auto err = check_sequence_triple(s)) throw InvalidInput("build_from_sequences: " + *err);
    max_vertices = std::min<std::uint64_t>(max_vertices, UINT32_MAX);  // 32-bit vertex ids
    if (const BigInt need = forest_size(s); need > from_u64(max_vertices)) {
        throw BudgetExceeded("build_from_sequences: forest vertices",
                             need.fits_ulong_p() ? need.get_ui() : UINT64_MAX, max_vertices);
    }
    const std::size_t k = s.k;
    const std::size_t L = 2 * k + 1;
    const std::uint64_t a = k + 1;
    const std::uint64_t b = k;

    enum Block { XR, XB, ZR, ZRB, ZB, ZBB, YM, YP, kBlocks };
    std::vector<std::array<std::uint64_t, kBlocks>> size(L + 1), start(L + 1);
    std::uint64_t n = L + 1;
    std::uint64_t m = L;
    for (std::size_t j = 0; j <= L; ++j) {
        const std::uint64_t xj = to_u64(s.x[j]);
        const std::uint64_t zj = to_u64(s.z[j]);
        const std::uint64_t yj = j < s.y.size() ? to_u64(s.y[j]) : 0;
        size[j] = {a * xj, b * xj, a * zj, a * zj, b * zj, b * zj, a * yj, a * yj};
        for (int c = 0; c < kBlocks; ++c) {
            start[j][c] = n;
            n += size[j][c];
        }
        m += size[j][XR] + size[j][XB] + 2 * size[j][ZR] + 2 * size[j][ZB] + size[j][YM];
    }

    LabelledForest f;
    f.spine_length = L;
    f.roles.resize(n);
    for (std::uint32_t j = 0; j <= L; ++j) f.roles[j] = {RoleKind::Spine, j};
    constexpr RoleKind kinds[kBlocks] = {RoleKind::XR, RoleKind::XB,  RoleKind::ZR,     RoleKind::ZRB,
                                         RoleKind::ZB, RoleKind::ZBB, RoleKind::Yminus, RoleKind::Yplus};
    for (std::uint32_t j = 0; j <= L; ++j) {
        for (int c = 0; c < kBlocks; ++c) {
            std::fill_n(f.roles.begin() + static_cast<std::ptrdiff_t>(start[j][c]), size[j][c], VertexRole{kinds[c], j});
        }
    }

    std::vector<Edge> edges;
    edges.reserve(m);
    auto span_edges = [&](std::uint64_t from, std::uint64_t count, std::uint64_t to, Colour c) {
        for (std::uint64_t i = 0; i < count; ++i) {
            edges.push_back({static_cast<Vertex>(from + i), static_cast<Vertex>(to + i), c});
        }
    };
    auto fan = [&](Vertex hub, std::uint64_t first, std::uint64_t count, Colour c) {
        for (std::uint64_t i = 0; i < count; ++i) edges.push_back({hub, static_cast<Vertex>(first + i), c});
    };
    for (Vertex j = 0; j <= L; ++j) {
        if (j < L) edges.push_back({j, j + 1, spine_colour(j)});
        fan(j, start[j][XR], size[j][XR], Colour::Red);
        fan(j, start[j][XB], size[j][XB], Colour::Blue);
        fan(j, start[j][ZR], size[j][ZR], Colour::Red);
        fan(j, start[j][ZB], size[j][ZB], Colour::Blue);
    }
    for (std::size_t j = 0; j <= L; ++j) {
        span_edges(start[j][ZR], size[j][ZR], start[j][ZRB], Colour::Blue);
        span_edges(start[j][ZB], size[j][ZB], start[j][ZBB], Colour::Blue);
        span_edges(start[j][YM], size[j][YM], start[j][YP], spine_colour(j));
    }
    f.graph = EdgeColouredGraph(n, std::move(edges));
    f.phi = propagate_phi(f.graph, f.roles, L);
    return f;
}

/// H_{2k+1} from the explicit sequences.
inline LabelledForest build_h_odd(std::size_t k) { return build_from_sequences(sequences(k)); }

/// H_{2k}: P_{2k}^A with one red and one blue leaf at every internal vertex,
/// plus one isolated red edge and one isolated blue edge. Each isolated edge
/// is anchored to the spine edge of its colour that makes the cover uniform;
/// the placement is found by trying all of them.
inline LabelledForest build_h_even(std::size_t k) {
    if (k == 0) throw InvalidInput("build_h_even: k must be at least 1");
    const std::size_t L = 2 * k;
    for (std::uint32_t red = 0; red < L; red += 2) {
        for (std::uint32_t blue = 1; blue < L; blue += 2) {
            ForestBuilder builder(L);
            for (std::uint32_t j = 1; j < L; ++j) {
                builder.add_leaves(j, Colour::Red, 1, RoleKind::XR);
                builder.add_leaves(j, Colour::Blue, 1, RoleKind::XB);
            }
            builder.add_isolated_edges(red, 1);
            builder.add_isolated_edges(blue, 1);
            LabelledForest f = builder.build();
            const auto [vertices, edges] = tally_preimages(f);
            const bool uniform = std::all_of(vertices.begin(), vertices.end(), [&](auto c) { return c == vertices[0]; }) &&
                                 std::all_of(edges.begin(), edges.end(), [&](auto c) { return c == vertices[0]; });
            if (uniform) return f;
        }
    }
    throw std::logic_error("build_h_even: no uniform placement of the isolated edges");
}

inline const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {"H3_small", "H3_large", "H5"};
    return names;
}

/// Hand-assembled reference forests.
inline LabelledForest fixture(std::string_view name) {
    if (name == "H3_small") {
        ForestBuilder b(3);
        b.add_leaves(1, Colour::Red, 2, RoleKind::XR);
        b.add_leaves(2, Colour::Red, 2, RoleKind::XR);
        b.add_leaves(1, Colour::Blue, 1, RoleKind::XB);
        b.add_leaves(2, Colour::Blue, 1, RoleKind::XB);
        b.add_isolated_vertices(1, 1);
        b.add_isolated_vertices(2, 1);
        return b.build();
    }
    if (name == "H3_large") {
        ForestBuilder b(3);
        b.add_leaves(1, Colour::Red, 6, RoleKind::XR);
        b.add_leaves(2, Colour::Red, 4, RoleKind::XR);
        b.add_leaves(1, Colour::Blue, 3, RoleKind::XB);
        b.add_leaves(2, Colour::Blue, 2, RoleKind::XB);
        b.add_isolated_vertices(1, 3);
        b.add_isolated_edges(1, 1);
        b.add_isolated_edges(2, 2);
        return b.build();
    }
    if (name == "H5") {
        ForestBuilder b(5);
        for (std::uint32_t j : {1u, 4u}) {
            b.add_leaves(j, Colour::Red, 39, RoleKind::XR);
            b.add_leaves(j, Colour::Blue, 26, RoleKind::XB);
        }
        for (std::uint32_t j : {2u, 3u}) {
            b.add_leaves(j, Colour::Red, 21, RoleKind::XR);
            b.add_leaves(j, Colour::Blue, 14, RoleKind::XB);
            b.add_pendant_paths(j, Colour::Red, Colour::Blue, 15, RoleKind::ZR, RoleKind::ZRB);
            b.add_pendant_paths(j, Colour::Blue, Colour::Blue, 10, RoleKind::ZB, RoleKind::ZBB);
        }
        b.add_isolated_edges(0, 36);
        b.add_isolated_edges(2, 3);
        b.add_isolated_edges(4, 36);
        return b.build();
    }
    throw InvalidInput("unknown fixture '" + std::string(name) + "'");
}

}  // namespace semind
