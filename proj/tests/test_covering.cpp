#include <gtest/gtest.h>

#include "semind/constructions.hpp"
#include "semind/covering.hpp"

using namespace semind;

TEST(CVertex, ClosedFormExamples) {
    EXPECT_EQ(c_vertex(1, 0, sequences(1)), 12);
    EXPECT_EQ(c_vertex(2, 2, sequences(2)), 90);
    EXPECT_EQ(c_vertex(3, 1, sequences(3)), 336);
    EXPECT_THROW(c_vertex_terms(1, 4), InvalidInput);
}

TEST(CEdge, ClosedFormExamples) {
    EXPECT_EQ(c_edge(1, 1, sequences(1)), 12);
    EXPECT_EQ(c_edge(2, 2, sequences(2)), 90);
    EXPECT_EQ(c_edge(3, 0, sequences(3)), 336);
    EXPECT_THROW(c_edge_terms(1, 3), InvalidInput);
}

TEST(CoverSums, HitTargetUpTo60) {
    for (std::size_t k = 1; k <= 60; ++k) {
        const auto s = sequences(k);
        const BigInt target = cover_target(k);
        for (std::size_t j = 0; j <= 2 * k + 1; ++j) ASSERT_EQ(c_vertex(k, j, s), target) << "k=" << k << " v" << j;
        for (std::size_t j = 0; j <= 2 * k; ++j) ASSERT_EQ(c_edge(k, j, s), target) << "k=" << k << " e" << j;
    }
    EXPECT_EQ(cover_target(5), 1980);
}

TEST(CoverProfile, TalliesPreimages) {
    auto f = build_h_odd(1);
    auto p = cover_profile(f);
    EXPECT_EQ(p.vertex_cover, (std::vector<std::uint64_t>{13, 13, 13, 13}));
    EXPECT_EQ(p.edge_cover, (std::vector<std::uint64_t>{13, 13, 13}));
    ASSERT_TRUE(p.uniform_multiplicity);
    EXPECT_EQ(*p.uniform_multiplicity, 13u);
}

TEST(CoverProfile, SumsAndSymmetry) {
    for (std::size_t k = 1; k <= 8; ++k) {
        auto f = build_h_odd(k);
        auto p = cover_profile(f);
        std::uint64_t sv = 0, se = 0;
        for (auto c : p.vertex_cover) sv += c;
        for (auto c : p.edge_cover) se += c;
        EXPECT_EQ(sv, f.graph.num_vertices());
        EXPECT_EQ(se, f.graph.num_edges());
        const auto L = f.spine_length;
        for (std::size_t j = 0; j <= L; ++j) EXPECT_EQ(p.vertex_cover[j], p.vertex_cover[L - j]);
        ASSERT_TRUE(p.uniform_multiplicity);
        EXPECT_EQ(*p.uniform_multiplicity * (L + 1), f.graph.num_vertices());
        EXPECT_EQ(*p.uniform_multiplicity * L, f.graph.num_edges());
    }
}

TEST(CoverProfile, RejectsNonHomomorphism) {
    auto f = fixture("H3_small");
    f.phi[4] = 2;
    try {
        cover_profile(f);
        FAIL() << "expected rejection";
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("edge (1,4)"), std::string::npos) << e.what();
    }
}

TEST(CoverProfile, NonUniformHasNoMultiplicity) {
    ForestBuilder b(3);
    b.add_leaves(1, Colour::Red, 1, RoleKind::XR);
    auto p = cover_profile(b.build());
    EXPECT_FALSE(p.uniform_multiplicity);
    EXPECT_EQ(p.vertex_cover[0], 2u);
}

TEST(ImplicitProfile, MatchesMaterialisedForest) {
    for (std::size_t k = 1; k <= 10; ++k) {
        auto direct = cover_profile(build_h_odd(k));
        auto implicit = implicit_cover_profile(sequences(k));
        EXPECT_EQ(direct.vertex_cover, implicit.vertex_cover) << k;
        EXPECT_EQ(direct.edge_cover, implicit.edge_cover) << k;
    }
    SequenceTriple h5{2, {0, 13, 7, 7, 13, 0}, {12, 0, 1, 0, 12}, {0, 0, 5, 5, 0, 0}};
    EXPECT_EQ(implicit_cover_profile(h5).uniform_multiplicity, 76u);
}

// Perturbing any single entry (symmetrically) must break at least one cover sum.
TEST(CoverSums, SensitiveToEveryEntry) {
    const std::size_t k = 4;
    const auto base = sequences(k);
    const BigInt target = cover_target(k);
    auto all_on_target = [&](const SequenceTriple& s) {
        for (std::size_t j = 0; j <= 2 * k + 1; ++j)
            if (c_vertex(k, j, s) != target) return false;
        for (std::size_t j = 0; j <= 2 * k; ++j)
            if (c_edge(k, j, s) != target) return false;
        return true;
    };
    ASSERT_TRUE(all_on_target(base));
    for (auto member : {&SequenceTriple::x, &SequenceTriple::y, &SequenceTriple::z}) {
        for (std::size_t i = 0; i < (base.*member).size(); ++i) {
            auto s = base;
            (s.*member)[i] += 1;
            EXPECT_FALSE(all_on_target(s)) << i;
        }
    }
}

TEST(VerifyCoverSums, PassesDirectAndImplicit) {
    auto r1 = verify_appendix(1);
    EXPECT_TRUE(r1.pass);
    EXPECT_TRUE(r1.direct);
    EXPECT_EQ(r1.target, 12);
    EXPECT_EQ(r1.multiplicity, 13u);
    EXPECT_EQ(r1.checks.size(), 4u + 3u);

    auto r5 = verify_appendix(5);
    EXPECT_TRUE(r5.pass);
    EXPECT_EQ(r5.target, 1980);

    auto r40 = verify_appendix(40, 10);
    EXPECT_TRUE(r40.pass);
    EXPECT_FALSE(r40.direct);
    EXPECT_NE(r40.text().find("PASS"), std::string::npos);
}
