#include <coxbrauer/generators.hpp>

#include <coxbrauer/tree_algebra.hpp>

#include <gtest/gtest.h>

using namespace coxbrauer;

namespace {

std::vector<int> layer(std::initializer_list<std::pair<int, int>> entries, int n) {
    std::vector<int> v(static_cast<std::size_t>(n), 0);
    for (auto [k, m] : entries) v[static_cast<std::size_t>(k)] = m;
    return v;
}

PlanarBrauerTree ree_tree() { return g2ree_tree(validate_ell(coxeter_datum({Family::G2Ree, 2}), 27, 19)); }

} // namespace

TEST(TreeAlgebra, StarDimensionEqualsGroupOrder) {
    auto A = from_tree(build_star_tree(7, 3, 2), 7);
    EXPECT_EQ(A.dim(), 21u);
    EXPECT_TRUE(A.associative());
    EXPECT_EQ(A.hom_dimensions(), (IntMatrix{{3, 2, 2}, {2, 3, 2}, {2, 2, 3}}));
    EXPECT_EQ(hom_space(A, 0, 0).size(), 3u);
}

TEST(TreeAlgebra, SmallDimensions) {
    EXPECT_EQ(from_tree(line_tree(1, 2, 1), 7).dim(), 3u);
    EXPECT_EQ(from_tree(line_tree(2, 1, 1), 7).dim(), 6u);
    EXPECT_EQ(from_tree(line_tree(1, 1, 1), 7).dim(), 2u);
    auto ree = from_tree(ree_tree(), 19);
    EXPECT_EQ(ree.dim(), 84u);
    EXPECT_TRUE(ree.associative());
    EXPECT_EQ(hom_space(from_tree(line_tree(2, 1, 1), 7), 0, 1).size(), 1u);
}

TEST(TreeAlgebra, FieldChecks) {
    EXPECT_THROW(from_tree(line_tree(2, 1, 1), 8), Error);
    try {
        from_tree(build_star_tree(7, 3, 2), 5, true);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FieldTooSmall);
    }
}

TEST(TreeAlgebra, DimensionFormulaAndCartanOnRandomTrees) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        auto t = gen::random_hlm_tree(rng, 6, 4, 3);
        auto A = from_tree(t, 5);
        EXPECT_EQ(A.dim(), closed_form_dimension(t));
        EXPECT_EQ(A.hom_dimensions(), cartan_matrix(decomposition_matrix(t)));
        if (trial < 15) {
            EXPECT_TRUE(A.associative());
        }
    }
}

TEST(TreeAlgebra, StarExtQuiver) {
    auto A = from_tree(build_star_tree(7, 3, 2), 7);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(A.ext1(i, j) != 0, i == (j + 1) % 3) << i << "," << j;
}

TEST(TreeAlgebra, ExtMatchesPlanarSuccessor) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        auto t = gen::random_hlm_tree(rng, 6, 4, 3);
        auto A = from_tree(t, 7);
        // Ext^1(S_a, S_b) counts nodes v at which a follows b anticlockwise.
        for (int a = 0; a < t.h0; ++a)
            for (int b = 0; b < t.h0; ++b) {
                int expect = 0;
                for (int v = 0; v < t.vertex_count(); ++v) {
                    auto around = t.cyclic_order(v);
                    if (std::find(around.begin(), around.end(), b) == around.end()) continue;
                    if (around.size() * static_cast<std::size_t>(t.vertex_multiplicity(v)) < 2 && !(t.h0 == 1 && v == t.exceptional())) continue;
                    expect += t.successor(v, b) == a;
                }
                EXPECT_EQ(A.ext1(a, b), expect) << "trial " << trial;
            }
    }
}

TEST(TreeAlgebra, SingleEdgeLoops) {
    EXPECT_EQ(from_tree(line_tree(1, 2, 1), 7).ext1(0, 0), 1);
    EXPECT_EQ(from_tree(line_tree(1, 1, 1), 7).ext1(0, 0), 1);
}

TEST(Projective, LineInteriorAndEnd) {
    auto A = from_tree(line_tree(3, 1, 1), 7);
    auto L1 = loewy_layers(A, projective(A, 1));
    ASSERT_EQ(L1.size(), 3u);
    EXPECT_EQ(L1[0], layer({{1, 1}}, 3));
    EXPECT_EQ(L1[1], layer({{0, 1}, {2, 1}}, 3));
    EXPECT_EQ(L1[2], layer({{1, 1}}, 3));
    auto L2 = loewy_layers(A, projective(A, 2));
    ASSERT_EQ(L2.size(), 3u);
    EXPECT_EQ(L2[0], layer({{2, 1}}, 3));
    EXPECT_EQ(L2[1], layer({{1, 1}}, 3));
    EXPECT_EQ(L2[2], layer({{2, 1}}, 3));
}

TEST(Projective, StarIsUniserial) {
    auto A = from_tree(build_star_tree(7, 3, 2), 7);
    auto L = loewy_layers(A, projective(A, 0));
    ASSERT_EQ(L.size(), 7u);
    std::vector<int> total(3, 0);
    for (const auto& l : L) {
        int s = 0;
        for (int k = 0; k < 3; ++k) {
            s += l[static_cast<std::size_t>(k)];
            total[static_cast<std::size_t>(k)] += l[static_cast<std::size_t>(k)];
        }
        EXPECT_EQ(s, 1);
    }
    EXPECT_EQ(total, (std::vector<int>{3, 2, 2}));
    // Walking down: S_0, S_2, S_1, S_0, ... (arrows go to the predecessor).
    EXPECT_EQ(L[1], layer({{2, 1}}, 3));
}

TEST(Projective, HeadAndSocleSimpleOnRandomTrees) {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        auto t = gen::random_hlm_tree(rng, 5, 3, 3);
        auto A = from_tree(t, 5);
        for (int a = 0; a < t.h0; ++a) {
            auto P = projective(A, a);
            EXPECT_TRUE(verify_module(A, P));
            auto L = loewy_layers(A, P);
            EXPECT_EQ(L.front(), layer({{a, 1}}, t.h0));
            EXPECT_EQ(L.back(), layer({{a, 1}}, t.h0));
            EXPECT_EQ(socle_dimensions(A, P), layer({{a, 1}}, t.h0));
        }
    }
}

TEST(Uniserial, StarShapes) {
    auto A = from_tree(build_star_tree(7, 3, 2), 7);
    auto N = uniserial_N(A, {0, 0, 2});
    EXPECT_TRUE(verify_module(A, N));
    auto L = loewy_layers(A, N);
    ASSERT_EQ(L.size(), 3u);
    EXPECT_EQ(L[0], layer({{2, 1}}, 3));
    EXPECT_EQ(L[1], layer({{1, 1}}, 3));
    EXPECT_EQ(L[2], layer({{0, 1}}, 3));
    // Restriction to the vertex grading: k_0 ⊕ k_1 ⊕ k_2.
    std::vector<int> grading(3, 0);
    for (int v : N.vertex) ++grading[static_cast<std::size_t>(v)];
    EXPECT_EQ(grading, (std::vector<int>{1, 1, 1}));
    auto S = uniserial_N(A, {1, 1, 1});
    EXPECT_EQ(S.dim(), 1u);
    EXPECT_EQ(loewy_layers(A, S), (std::vector<std::vector<int>>{layer({{1, 1}}, 3)}));
}

TEST(Uniserial, RejectsNonStar) {
    auto A = from_tree(line_tree(3, 1, 1), 7);
    try {
        uniserial_N(A, {0, 0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotStar);
    }
}

TEST(Modules, BrokenRelationsDetected) {
    auto A = from_tree(build_star_tree(7, 3, 2), 7);
    auto N = uniserial_N(A, {0, 0, 2});
    // Attach k_2 → k_1 with a wrong grading.
    N.action[0](0, 0) = 1;
    EXPECT_FALSE(verify_module(A, N));
}
