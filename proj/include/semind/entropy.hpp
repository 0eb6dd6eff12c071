#pragma once

// Exact-probability discrete distributions and their entropies, the
// homomorphism distributions of a spine path, and the glued distribution on
// assignments of a labelled forest.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "semind/constructions.hpp"
#include "semind/covering.hpp"
#include "semind/ecgraph.hpp"
#include "semind/errors.hpp"
#include "semind/homcount.hpp"
#include "semind/rational.hpp"

namespace semind {

using Outcome = std::vector<std::uint32_t>;

/// Finite distribution over tuples of a fixed arity. Only outcomes of positive
/// probability are stored, so the table is the range of the variable.
class DiscreteDistribution {
public:
    DiscreteDistribution() = default;

    DiscreteDistribution(std::size_t arity, std::map<Outcome, Rational> table) : arity_(arity) {
        Rational total = 0;
        for (auto& [outcome, p] : table) {
            if (outcome.size() != arity) throw InvalidInput("distribution: outcome of wrong arity");
            if (sgn(p) < 0) throw InvalidInput("distribution: negative probability");
            p.canonicalize();
            total += p;
        }
        if (total != 1) throw InvalidInput("distribution: probabilities sum to " + to_fraction_string(total));
        std::erase_if(table, [](const auto& kv) { return sgn(kv.second) == 0; });
        table_ = std::move(table);
    }

    static DiscreteDistribution uniform(std::size_t arity, const std::vector<Outcome>& outcomes) {
        if (outcomes.empty()) throw InvalidInput("distribution: empty support");
        std::map<Outcome, Rational> table;
        const Rational p(1, static_cast<unsigned long>(outcomes.size()));
        for (const auto& o : outcomes) table[o] += p;
        return DiscreteDistribution(arity, std::move(table));
    }

    std::size_t arity() const noexcept { return arity_; }
    std::size_t support_size() const noexcept { return table_.size(); }
    const std::map<Outcome, Rational>& table() const noexcept { return table_; }

    Rational prob(const Outcome& o) const {
        auto it = table_.find(o);
        return it == table_.end() ? Rational(0) : it->second;
    }

    friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

private:
    std::size_t arity_ = 0;
    std::map<Outcome, Rational> table_;
};

/// -sum p log2 p over the support. The logarithm of each exact probability is
/// taken through its numerator and denominator, so tiny p lose nothing.
inline double entropy_of_probs(const std::vector<Rational>& probs) {
    double h = 0;
    for (const auto& p : probs) {
        if (sgn(p) > 0) h -= to_double(p) * log2_rat(p);
    }
    return h;
}

inline double entropy(const DiscreteDistribution& d) {
    std::vector<Rational> probs;
    probs.reserve(d.support_size());
    for (const auto& [o, p] : d.table()) probs.push_back(p);
    return entropy_of_probs(probs);
}

inline DiscreteDistribution marginal(const DiscreteDistribution& d, const std::vector<std::size_t>& coords) {
    std::map<Outcome, Rational> table;
    Outcome key(coords.size());
    for (const auto& [o, p] : d.table()) {
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] >= d.arity()) throw InvalidInput("marginal: coordinate out of range");
            key[i] = o[coords[i]];
        }
        table[key] += p;
    }
    return DiscreteDistribution(coords.size(), std::move(table));
}

/// H(X | Y) = sum_y P(Y=y) H(X | Y=y), straight from the definition.
inline double conditional_entropy(const DiscreteDistribution& d, const std::vector<std::size_t>& x_coords,
                                  const std::vector<std::size_t>& y_coords) {
    std::map<Outcome, std::map<Outcome, Rational>> by_y;
    for (const auto& [o, p] : d.table()) {
        Outcome x, y;
        for (auto c : x_coords) x.push_back(o.at(c));
        for (auto c : y_coords) y.push_back(o.at(c));
        by_y[y][x] += p;
    }
    double h = 0;
    for (const auto& [y, xs] : by_y) {
        Rational py = 0;
        for (const auto& [x, p] : xs) py += p;
        std::vector<Rational> cond;
        for (const auto& [x, p] : xs) cond.push_back(p / py);
        h += to_double(py) * entropy_of_probs(cond);
    }
    return h;
}

/// Pairs (X, Y) stored as 2-tuples: H(X | Y).
inline double conditional_entropy(const DiscreteDistribution& joint) {
    if (joint.arity() != 2) throw InvalidInput("conditional_entropy: expected a joint of arity 2");
    return conditional_entropy(joint, {0}, {1});
}

/// Gluing along a shared coordinate: `left` is over (A..., B) with B last,
/// `right` over (B, C...) with B first, and both give B the same law. The
/// result is over (A..., B, C...) with P = P_left(a, b) P_right(b, c) / P(b),
/// making C conditionally independent of A given B.
inline DiscreteDistribution glue(const DiscreteDistribution& left, const DiscreteDistribution& right) {
    if (left.arity() == 0 || right.arity() == 0) throw InvalidInput("glue: empty arity");
    const auto b_left = marginal(left, {left.arity() - 1});
    const auto b_right = marginal(right, {0});
    if (b_left != b_right) throw InvalidInput("glue: the shared coordinate has different laws");
    std::map<std::uint32_t, std::vector<std::pair<Outcome, Rational>>> right_by_b;
    for (const auto& [o, p] : right.table()) right_by_b[o[0]].push_back({o, p});
    std::map<Outcome, Rational> table;
    for (const auto& [a, pa] : left.table()) {
        const std::uint32_t b = a.back();
        const Rational pb = b_left.prob({b});
        for (const auto& [c, pc] : right_by_b[b]) {
            Outcome o = a;
            o.insert(o.end(), c.begin() + 1, c.end());
            table[o] += pa * pc / pb;
        }
    }
    return DiscreteDistribution(left.arity() + right.arity() - 1, std::move(table));
}

/// Exact test of P(a,b,c) P(b) = P(a,b) P(b,c) for every a, b, c.
inline bool conditionally_independent(const DiscreteDistribution& d, const std::vector<std::size_t>& a_coords,
                                      const std::vector<std::size_t>& c_coords, const std::vector<std::size_t>& b_coords) {
    auto concat = [](std::vector<std::size_t> x, const std::vector<std::size_t>& y) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
    };
    const auto pb = marginal(d, b_coords);
    const auto pab = marginal(d, concat(a_coords, b_coords));
    const auto pbc = marginal(d, concat(b_coords, c_coords));
    const auto pabc = marginal(d, concat(concat(a_coords, b_coords), c_coords));
    const std::size_t na = a_coords.size(), nb = b_coords.size();
    std::map<Outcome, std::vector<std::pair<Outcome, Rational>>> bc_by_b;
    for (const auto& [o, p] : pbc.table()) {
        bc_by_b[Outcome(o.begin(), o.begin() + static_cast<std::ptrdiff_t>(nb))].push_back({o, p});
    }
    std::size_t matched = 0;
    for (const auto& [ab, p_ab] : pab.table()) {
        const Outcome b(ab.begin() + static_cast<std::ptrdiff_t>(na), ab.end());
        const Rational p_b = pb.prob(b);
        for (const auto& [bc, p_bc] : bc_by_b[b]) {
            Outcome abc = ab;
            abc.insert(abc.end(), bc.begin() + static_cast<std::ptrdiff_t>(nb), bc.end());
            const Rational p_abc = pabc.prob(abc);
            if (p_abc * p_b != p_ab * p_bc) return false;
            if (sgn(p_abc) > 0) ++matched;
        }
    }
    return matched == pabc.support_size();
}

// ---------------------------------------------------------------------------
// Homomorphisms of a path.

/// Spine length L if p is a path on 0..L with edges (i, i+1); throws otherwise.
inline std::size_t path_length(const EdgeColouredGraph& p) {
    require_valid(p, "path");
    if (p.num_vertices() < 2 || p.num_edges() + 1 != p.num_vertices()) throw InvalidInput("expected a path 0-1-...-L");
    for (std::size_t i = 0; i < p.num_edges(); ++i) {
        if (p.edges()[i].u != i || p.edges()[i].v != i + 1) throw InvalidInput("expected a path 0-1-...-L");
    }
    return p.num_edges();
}

inline constexpr std::uint64_t kDefaultHomGuard = 10'000'000;

/// Uniform distribution on Hom(p, g), each homomorphism encoded by its image tuple.
inline DiscreteDistribution uniform_hom_distribution(const EdgeColouredGraph& p, const EdgeColouredGraph& g,
                                                     std::uint64_t guard = kDefaultHomGuard) {
    const std::size_t L = path_length(p);
    const HomCount hom = hom_forest(p, g);
    if (sgn(hom) == 0) throw InvalidInput("uniform_hom_distribution: Hom(p, g) is empty");
    if (hom > from_u64(guard)) throw BudgetExceeded("uniform_hom_distribution: homomorphisms", to_u64(hom), guard);
    const Adjacency adj(g);
    std::vector<Outcome> homs;
    Outcome current(L + 1);
    auto extend = [&](auto&& self, std::size_t i) -> void {
        if (i == L + 1) {
            homs.push_back(current);
            return;
        }
        for (Vertex w : adj.neighbours(current[i - 1], p.edges()[i - 1].colour)) {
            current[i] = w;
            self(self, i + 1);
        }
    };
    for (Vertex w = 0; w < g.num_vertices(); ++w) {
        current[0] = w;
        extend(extend, 1);
    }
    return DiscreteDistribution::uniform(L + 1, homs);
}

/// Single and consecutive-pair laws of a uniform homomorphism of p, computed
/// from prefix and suffix walk counts without listing Hom(p, g).
struct SpineMarginals {
    std::size_t length = 0;
    HomCount hom;
    std::vector<std::map<std::uint32_t, Rational>> single;                        // X_i
    std::vector<std::map<std::pair<std::uint32_t, std::uint32_t>, Rational>> pair;  // (X_i, X_{i+1})

    double single_entropy(std::size_t i) const {
        std::vector<Rational> probs;
        for (const auto& [w, p] : single[i]) probs.push_back(p);
        return entropy_of_probs(probs);
    }
    double pair_entropy(std::size_t i) const {
        std::vector<Rational> probs;
        for (const auto& [w, p] : pair[i]) probs.push_back(p);
        return entropy_of_probs(probs);
    }
};

inline SpineMarginals spine_marginals(const EdgeColouredGraph& p, const EdgeColouredGraph& g) {
    const std::size_t L = path_length(p);
    const std::size_t n = g.num_vertices();
    const Adjacency adj(g);
    std::vector<std::vector<BigInt>> left(L + 1, std::vector<BigInt>(n, 1)), right(L + 1, std::vector<BigInt>(n, 1));
    for (std::size_t i = 1; i <= L; ++i) {
        const Colour c = p.edges()[i - 1].colour;
        for (Vertex w = 0; w < n; ++w) {
            BigInt s = 0;
            for (Vertex u : adj.neighbours(w, c)) s += left[i - 1][u];
            left[i][w] = s;
        }
    }
    for (std::size_t i = L; i-- > 0;) {
        const Colour c = p.edges()[i].colour;
        for (Vertex w = 0; w < n; ++w) {
            BigInt s = 0;
            for (Vertex u : adj.neighbours(w, c)) s += right[i + 1][u];
            right[i][w] = s;
        }
    }
    SpineMarginals m;
    m.length = L;
    m.hom = 0;
    for (Vertex w = 0; w < n; ++w) m.hom += left[L][w];
    if (sgn(m.hom) == 0) throw InvalidInput("spine_marginals: Hom(p, g) is empty");
    m.single.resize(L + 1);
    m.pair.resize(L);
    for (std::size_t i = 0; i <= L; ++i) {
        for (Vertex w = 0; w < n; ++w) {
            const BigInt c = left[i][w] * right[i][w];
            if (sgn(c) > 0) m.single[i][w] = make_rational(c, m.hom);
        }
    }
    for (std::size_t i = 0; i < L; ++i) {
        const Colour c = p.edges()[i].colour;
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b : adj.neighbours(a, c)) {
                const BigInt cnt = left[i][a] * right[i + 1][b];
                if (sgn(cnt) > 0) m.pair[i][{a, b}] = make_rational(cnt, m.hom);
            }
        }
    }
    return m;
}

/// sum_i H(X_i, X_{i+1}) - sum_{0<i<L} H(X_i) for a uniform homomorphism of p.
inline double path_entropy_formula(const EdgeColouredGraph& p, const EdgeColouredGraph& g) {
    const auto m = spine_marginals(p, g);
    double h = 0;
    for (std::size_t i = 0; i < m.length; ++i) h += m.pair_entropy(i);
    for (std::size_t i = 1; i < m.length; ++i) h -= m.single_entropy(i);
    return h;
}

namespace detail {
inline void require_spine(const LabelledForest& h, const EdgeColouredGraph& p) {
    if (path_length(p) != h.spine_length || !(p == alternating_path(h.spine_length))) {
        throw InvalidInput("the path must be the alternating spine of the forest");
    }
    check_homomorphism(h);
}
}  // namespace detail

/// sum over edges uv of H(X_phi(u), X_phi(v)) minus sum over vertices of (d(v) - 1) H(X_phi(v)).
inline double closed_form_entropy(const LabelledForest& h, const EdgeColouredGraph& p, const EdgeColouredGraph& g) {
    detail::require_spine(h, p);
    const auto m = spine_marginals(p, g);
    std::vector<double> single(m.length + 1), pair(m.length);
    for (std::size_t i = 0; i <= m.length; ++i) single[i] = m.single_entropy(i);
    for (std::size_t i = 0; i < m.length; ++i) pair[i] = m.pair_entropy(i);
    std::vector<std::uint64_t> degree(h.graph.num_vertices(), 0);
    double total = 0;
    for (const Edge& e : h.graph.edges()) {
        total += pair[std::min(h.phi[e.u], h.phi[e.v])];
        ++degree[e.u];
        ++degree[e.v];
    }
    for (std::size_t v = 0; v < degree.size(); ++v) {
        total -= (static_cast<double>(degree[v]) - 1.0) * single[h.phi[v]];
    }
    return total;
}

/// Law of the assignment built tree by tree: each root takes the law of
/// X_phi(root), and each other vertex is drawn from the conditional law of
/// X_phi(v) given X_phi(parent) = the parent's value. Roots are minimum-index
/// vertices and the state space n^v(h) must fit in `guard`.
inline DiscreteDistribution glued_distribution(const LabelledForest& h, const EdgeColouredGraph& p,
                                               const EdgeColouredGraph& g, std::uint64_t guard = kDefaultHomGuard) {
    detail::require_spine(h, p);
    const std::size_t vh = h.graph.num_vertices();
    const std::size_t n = g.num_vertices();
    const std::uint64_t states = saturating_pow(n, vh);
    if (states > guard) throw BudgetExceeded("glued_distribution: assignments n^v(h)", states, guard);
    const auto m = spine_marginals(p, g);

    // Visit order: components by minimum vertex, breadth first, children by index.
    const Adjacency adj(h.graph);
    constexpr Vertex none = UINT32_MAX;
    std::vector<Vertex> order, parent(vh, none);
    std::vector<bool> seen(vh, false);
    for (Vertex root = 0; root < vh; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        const std::size_t begin = order.size();
        order.push_back(root);
        for (std::size_t head = begin; head < order.size(); ++head) {
            std::vector<Vertex> children;
            for (Colour c : {Colour::Red, Colour::Blue}) {
                for (Vertex u : adj.neighbours(order[head], c)) {
                    if (!seen[u]) {
                        seen[u] = true;
                        parent[u] = order[head];
                        children.push_back(u);
                    }
                }
            }
            std::sort(children.begin(), children.end());
            order.insert(order.end(), children.begin(), children.end());
        }
    }

    // Conditional law of X_j given X_i = a for adjacent spine indices i, j.
    auto step_law = [&](std::uint32_t i, std::uint32_t j, std::uint32_t a) {
        std::vector<std::pair<std::uint32_t, Rational>> out;
        const auto pa = m.single[i].find(a);
        if (pa == m.single[i].end()) return out;
        const auto& pairs = m.pair[std::min(i, j)];
        for (Vertex b = 0; b < n; ++b) {
            const auto key = i < j ? std::make_pair(a, b) : std::make_pair(b, a);
            auto it = pairs.find(key);
            if (it != pairs.end()) out.push_back({b, it->second / pa->second});
        }
        return out;
    };

    std::map<Outcome, Rational> table;
    Outcome value(vh, 0);
    auto assign = [&](auto&& self, std::size_t pos, const Rational& prob) -> void {
        if (pos == order.size()) {
            table.emplace(value, prob);
            return;
        }
        const Vertex v = order[pos];
        if (parent[v] == none) {
            for (const auto& [w, pw] : m.single[h.phi[v]]) {
                value[v] = w;
                self(self, pos + 1, prob * pw);
            }
            return;
        }
        for (const auto& [w, pw] : step_law(h.phi[parent[v]], h.phi[v], value[parent[v]])) {
            value[v] = w;
            self(self, pos + 1, prob * pw);
        }
    };
    assign(assign, 0, Rational(1));
    return DiscreteDistribution(vh, std::move(table));
}

/// True iff every assignment in the support is a homomorphism h -> g.
inline bool support_is_homomorphic(const DiscreteDistribution& d, const EdgeColouredGraph& h, const EdgeColouredGraph& g) {
    const ColourMatrix colours(g);
    for (const auto& [o, p] : d.table()) {
        for (const Edge& e : h.edges()) {
            if (!colours.has(o[e.u], o[e.v], e.colour)) return false;
        }
    }
    return true;
}

}  // namespace semind
