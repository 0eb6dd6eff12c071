#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "semind/entropy.hpp"

using namespace semind;

namespace {

DiscreteDistribution random_joint(std::size_t arity, std::uint32_t values, std::mt19937_64& rng) {
    std::map<Outcome, Rational> weights;
    std::uint64_t total = 0;
    std::size_t cells = 1;
    for (std::size_t i = 0; i < arity; ++i) cells *= values;
    for (std::size_t c = 0; c < cells; ++c) {
        const std::uint64_t w = rng() % 4 == 0 ? 0 : 1 + rng() % 9;
        if (w == 0) continue;
        Outcome o(arity);
        std::size_t rest = c;
        for (std::size_t i = 0; i < arity; ++i) {
            o[i] = static_cast<std::uint32_t>(rest % values);
            rest /= values;
        }
        weights[o] = Rational(static_cast<unsigned long>(w));
        total += w;
    }
    if (total == 0) {
        weights[Outcome(arity, 0)] = 1;
        total = 1;
    }
    for (auto& [o, p] : weights) p /= static_cast<unsigned long>(total);
    return DiscreteDistribution(arity, std::move(weights));
}

EdgeColouredGraph triangle() {
    return EdgeColouredGraph::from_edges(3, {{0, 1, Colour::Red}, {1, 2, Colour::Blue}, {0, 2, Colour::Red}});
}

// Hosts with at least one homomorphic copy of the path.
std::vector<EdgeColouredGraph> corpus(std::size_t count, std::size_t max_n, const EdgeColouredGraph& path,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<EdgeColouredGraph> out;
    while (out.size() < count) {
        auto g = random_host(2 + rng() % (max_n - 1), rng);
        if (sgn(hom_forest(path, g)) > 0) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace

TEST(Entropy, Examples) {
    EXPECT_DOUBLE_EQ(entropy(DiscreteDistribution::uniform(1, {{0}, {1}, {2}, {3}})), 2.0);
    EXPECT_DOUBLE_EQ(entropy(DiscreteDistribution(1, {{{7}, 1}})), 0.0);
    EXPECT_DOUBLE_EQ(entropy(DiscreteDistribution(1, {{{0}, Rational(1, 2)}, {{1}, Rational(1, 4)}, {{2}, Rational(1, 4)}})), 1.5);
}

TEST(Distribution, RejectsBadTables) {
    EXPECT_THROW(DiscreteDistribution(1, {{{0}, Rational(1, 2)}}), InvalidInput);
    EXPECT_THROW(DiscreteDistribution(1, {{{0}, Rational(3, 2)}, {{1}, Rational(-1, 2)}}), InvalidInput);
    EXPECT_THROW(DiscreteDistribution(2, {{{0}, 1}}), InvalidInput);
    EXPECT_THROW(DiscreteDistribution::uniform(1, {}), InvalidInput);
    auto d = DiscreteDistribution(1, {{{0}, 1}, {{1}, 0}});
    EXPECT_EQ(d.support_size(), 1u);
}

TEST(ConditionalEntropy, Examples) {
    EXPECT_NEAR(conditional_entropy(DiscreteDistribution::uniform(2, {{0, 0}, {1, 1}})), 0.0, 1e-12);
    EXPECT_NEAR(conditional_entropy(DiscreteDistribution::uniform(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}})), 1.0, 1e-12);
    EXPECT_NEAR(conditional_entropy(DiscreteDistribution::uniform(2, {{0, 0}, {0, 1}, {1, 0}})), 2.0 / 3.0, 1e-12);
}

TEST(Entropy, MaximalityOnRandomDistributions) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        auto d = random_joint(1, 2 + rng() % 6, rng);
        const double h = entropy(d);
        const double cap = std::log2(static_cast<double>(d.support_size()));
        ASSERT_GE(h, -1e-15);
        ASSERT_LE(h, cap + 1e-12);
        bool uniform = true;
        for (const auto& [o, p] : d.table()) uniform = uniform && p == d.table().begin()->second;
        if (!uniform) ASSERT_LT(h, cap - 1e-12);
        else ASSERT_NEAR(h, cap, 1e-12);
    }
}

TEST(Entropy, ChainRuleAndDeconditioning) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 300; ++trial) {
        auto d = random_joint(3, 2 + rng() % 3, rng);
        const double hxy = entropy(marginal(d, {0, 1}));
        const double hy = entropy(marginal(d, {1}));
        ASSERT_NEAR(conditional_entropy(d, {0}, {1}), hxy - hy, 1e-12);
        ASSERT_LE(conditional_entropy(d, {0}, {1, 2}), conditional_entropy(d, {0}, {1}) + 1e-12);
    }
}

TEST(Glue, MarginalsAndConditionalIndependence) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        // Force a shared law on B by building both sides from one joint over (A, B, C).
        auto base = random_joint(3, 2 + rng() % 3, rng);
        auto left = marginal(base, {0, 1});
        auto right = marginal(base, {1, 2});
        auto glued = glue(left, right);
        ASSERT_EQ(marginal(glued, {0, 1}), left);
        ASSERT_EQ(marginal(glued, {1, 2}), right);
        ASSERT_TRUE(conditionally_independent(glued, {0}, {2}, {1}));
        // Equality case of deconditioning.
        ASSERT_NEAR(conditional_entropy(glued, {2}, {0, 1}), conditional_entropy(glued, {2}, {1}), 1e-12);
    }
    auto a = DiscreteDistribution::uniform(2, {{0, 0}, {1, 1}});
    auto b = DiscreteDistribution(2, {{{0, 0}, Rational(3, 4)}, {{1, 0}, Rational(1, 4)}});
    EXPECT_THROW(glue(a, b), InvalidInput);
}

TEST(ConditionalIndependence, DetectsDependence) {
    auto d = DiscreteDistribution::uniform(3, {{0, 0, 0}, {1, 0, 1}});
    EXPECT_FALSE(conditionally_independent(d, {0}, {2}, {1}));
    auto e = DiscreteDistribution::uniform(3, {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {1, 0, 1}});
    EXPECT_TRUE(conditionally_independent(e, {0}, {2}, {1}));
}

TEST(UniformHom, Examples) {
    auto d = uniform_hom_distribution(alternating_path(3), triangle());
    EXPECT_EQ(d.support_size(), 2u);
    EXPECT_DOUBLE_EQ(entropy(d), 1.0);
    auto e = uniform_hom_distribution(alternating_path(1), EdgeColouredGraph(2, {{0, 1, Colour::Red}}));
    EXPECT_EQ(e.support_size(), 2u);
    EXPECT_THROW(uniform_hom_distribution(alternating_path(3), EdgeColouredGraph(3, {})), InvalidInput);
    EXPECT_THROW(uniform_hom_distribution(alternating_path(3), triangle(), 1), BudgetExceeded);
}

TEST(SpineMarginals, MatchEnumeratedDistribution) {
    std::mt19937_64 rng(4);
    for (std::size_t len = 1; len <= 5; ++len) {
        const auto p = alternating_path(len);
        for (const auto& g : corpus(20, 5, p, 10 + len)) {
            const auto d = uniform_hom_distribution(p, g);
            const auto m = spine_marginals(p, g);
            ASSERT_EQ(m.hom, BigInt(static_cast<unsigned long>(d.support_size())));
            for (std::size_t i = 0; i <= len; ++i) {
                const auto mi = marginal(d, {i});
                ASSERT_EQ(mi.support_size(), m.single[i].size());
                for (const auto& [w, pw] : m.single[i]) ASSERT_EQ(mi.prob({w}), pw);
            }
            for (std::size_t i = 0; i < len; ++i) {
                const auto mi = marginal(d, {i, i + 1});
                ASSERT_EQ(mi.support_size(), m.pair[i].size());
                for (const auto& [ab, pab] : m.pair[i]) ASSERT_EQ(mi.prob({ab.first, ab.second}), pab);
            }
        }
    }
}

TEST(PathEntropy, FormulaEqualsLogHom) {
    std::size_t checked = 0;
    for (std::size_t len = 1; len <= 5; ++len) {
        const auto p = alternating_path(len);
        for (const auto& g : corpus(20, 5, p, 100 + len)) {
            const double lhs = path_entropy_formula(p, g);
            ASSERT_NEAR(lhs, log2_big(hom_forest(p, g)), 1e-9);
            ASSERT_NEAR(lhs, entropy(uniform_hom_distribution(p, g)), 1e-9);
            ++checked;
        }
    }
    EXPECT_EQ(checked, 100u);
    // A host with exactly one homomorphism.
    auto single = EdgeColouredGraph(2, {{0, 1, Colour::Red}});
    auto p2 = EdgeColouredGraph(3, {{0, 1, Colour::Red}, {1, 2, Colour::Red}});
    EXPECT_NEAR(path_entropy_formula(alternating_path(1), single), 1.0, 1e-12);
    EXPECT_NEAR(path_entropy_formula(p2, EdgeColouredGraph(3, {{0, 1, Colour::Red}})), 1.0, 1e-12);
    auto c = circulant_host(9, {1, 2, 7, 8});
    EXPECT_NEAR(path_entropy_formula(alternating_path(3), c), log2_big(hom_forest(alternating_path(3), c)), 1e-9);
}

// The uniform homomorphism of a path is a Markov chain along the path.
TEST(UniformHom, MarkovAlongThePath) {
    const auto p = alternating_path(4);
    for (const auto& g : corpus(30, 5, p, 7)) {
        const auto d = uniform_hom_distribution(p, g);
        for (std::size_t i = 2; i <= 4; ++i) {
            std::vector<std::size_t> past;
            for (std::size_t j = 0; j + 1 < i; ++j) past.push_back(j);
            ASSERT_TRUE(conditionally_independent(d, {i}, past, {i - 1}));
        }
    }
}

TEST(Glued, PendantLeafAddsConditionalEntropy) {
    ForestBuilder b(3);
    b.add_leaves(1, Colour::Red, 1, RoleKind::XR);
    const auto h = b.build();
    const auto p = alternating_path(3);
    for (const auto& g : corpus(10, 4, p, 21)) {
        const auto d = glued_distribution(h, p, g);
        const auto m = spine_marginals(p, g);
        const double expected = log2_big(m.hom) + m.pair_entropy(0) - m.single_entropy(1);
        ASSERT_NEAR(entropy(d), expected, 1e-9);
    }
}

TEST(Glued, IsolatedVertexAddsItsEntropy) {
    ForestBuilder b(3);
    const auto bare = b.build();
    b.add_isolated_vertices(2, 1);
    const auto with_extra = b.build();
    const auto p = alternating_path(3);
    for (const auto& g : corpus(10, 4, p, 22)) {
        const auto m = spine_marginals(p, g);
        ASSERT_NEAR(entropy(glued_distribution(with_extra, p, g)), entropy(glued_distribution(bare, p, g)) + m.single_entropy(2),
                    1e-9);
    }
}

TEST(Glued, SupportInsideHomAndMatchesClosedForm) {
    const auto h = fixture("H3_small");
    const auto p = alternating_path(3);
    std::size_t checked = 0;
    for (const auto& g : corpus(60, 3, p, 23)) {
        if (g.num_vertices() != 3) continue;
        const auto d = glued_distribution(h, p, g);
        ASSERT_TRUE(support_is_homomorphic(d, h.graph, g));
        ASSERT_LE(BigInt(static_cast<unsigned long>(d.support_size())), hom_forest(h.graph, g));
        ASSERT_NEAR(entropy(d), closed_form_entropy(h, p, g), 1e-9);
        ASSERT_NEAR(entropy(d), 3 * log2_big(hom_forest(p, g)), 1e-9);
        ++checked;
    }
    EXPECT_GT(checked, 10u);
    EXPECT_THROW(glued_distribution(h, p, triangle(), 1000), BudgetExceeded);
}

TEST(ClosedForm, MultiplicityTimesLogHom) {
    const auto p3 = alternating_path(3);
    const auto p5 = alternating_path(5);
    for (const auto& g : corpus(25, 4, p3, 24)) {
        for (const char* name : {"H3_small", "H3_large"}) {
            const auto h = fixture(name);
            const double m = *cover_profile(h).uniform_multiplicity;
            ASSERT_NEAR(closed_form_entropy(h, p3, g), m * log2_big(hom_forest(p3, g)), 1e-9) << name;
            ASSERT_GE(hom_forest(h.graph, g), pow_int(hom_forest(p3, g), static_cast<std::uint64_t>(m)));
        }
    }
    const auto h5 = fixture("H5");
    for (const auto& g : corpus(10, 4, p5, 25)) {
        ASSERT_NEAR(closed_form_entropy(h5, p5, g), 76 * log2_big(hom_forest(p5, g)), 1e-9);
        ASSERT_GE(hom_forest(h5.graph, g), pow_int(hom_forest(p5, g), 76));
    }
    EXPECT_THROW(closed_form_entropy(h5, p3, triangle()), InvalidInput);
}
