#include <coxbrauer/generators.hpp>

#include <coxbrauer/brauer_tree.hpp>
#include <coxbrauer/tree_json.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace coxbrauer;

namespace {

EllContext ree_ctx() { return validate_ell(coxeter_datum({Family::G2Ree, 2}), 27, 19); }

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST(Series, Validation) {
    EXPECT_NO_THROW(validate_series({3, {{0, 0, 2}}}));
    EXPECT_EQ(code_of([] { validate_series({3, {{0, 0, 1}}}); }), ErrorCode::InvalidSeries);
    EXPECT_EQ(code_of([] { validate_series({3, {{0, 0, 1}, {1, 1, 2}}}); }), ErrorCode::InvalidSeries);
    EXPECT_EQ(code_of([] { validate_series({3, {{0, 2, 1}, {1, 0, 1}}}); }), ErrorCode::InvalidSeries);
    EXPECT_EQ(code_of([] { validate_series({3, {}}); }), ErrorCode::InvalidSeries);
}

TEST(ExceptionalMultiplicity, Examples) {
    EXPECT_EQ(exceptional_multiplicity(7, 3), 2);
    EXPECT_EQ(exceptional_multiplicity(ree_ctx()), 3);
    EXPECT_EQ(exceptional_multiplicity(validate_ell(coxeter_datum({Family::A, 2}), 2, 7)), 2);
    EXPECT_EQ(code_of([] { exceptional_multiplicity(7, 4); }), ErrorCode::NonIntegral);
    // q = 67: |T_c| = q^2 + q + 1 = 3·7^2·31, so μ = (49 − 1)/3.
    EXPECT_EQ(exceptional_multiplicity(validate_ell(coxeter_datum({Family::A, 2}), 67, 7)), 16);
}

TEST(HlmTree, ReeFixtureShape) {
    auto t = g2ree_tree(ree_ctx());
    EXPECT_EQ(t.h0, 6);
    EXPECT_EQ(t.multiplicity, 3);
    EXPECT_EQ(t.r, 1);
    // One length-2 branch exc--St--1 and four cuspidal leaves.
    EXPECT_EQ(t.endpoints(0), std::make_pair(t.exceptional(), 0));
    EXPECT_EQ(t.endpoints(1), std::make_pair(0, 1));
    EXPECT_EQ(t.vertex_name(0), "St");
    EXPECT_EQ(t.vertex_name(1), "1");
    for (int j = 2; j < 6; ++j) EXPECT_EQ(t.endpoints(j).first, t.exceptional());
    // Anticlockwise: St, [i], [ξ], [ξ̄], [−i].
    std::vector<std::string> names;
    for (int e : t.cyclic_order(t.exceptional())) names.push_back(t.vertex_name(e));
    EXPECT_EQ(names, (std::vector<std::string>{"St", "2G2[i]", "2G2[xi]", "2G2[xibar]", "2G2[-i]"}));
    EXPECT_EQ(t.height(0), 0);
    EXPECT_EQ(t.height(1), 1);
}

TEST(HlmTree, ReeFixtureTagsFollowEigenvalues) {
    // Branch tag k means ζ ≡ ξ^k with ξ ≡ q^5; its first index m satisfies ζ·q ≡ (q^2)^m
    // for the cuspidal series.
    auto ctx = ree_ctx();
    const Fp2 xi = ctx.q_mod.pow(5);
    for (const auto& b : g2ree_series().branches) {
        if (b.zeta == 0) continue;
        EXPECT_EQ(xi.pow(static_cast<u64>(b.zeta)) * ctx.q_mod, ctx.q_mod.pow(static_cast<u64>(2 * b.m))) << b.zeta;
    }
}

TEST(HlmTree, LineAndStarShapes) {
    auto line = line_tree(4, 2, 1);
    EXPECT_EQ(line.cyclic_order(line.exceptional()), std::vector<int>{0});
    for (int j = 1; j < 4; ++j) EXPECT_EQ(line.endpoints(j), std::make_pair(j - 1, j));
    auto star = build_hlm_tree(SeriesDatum{5, {{4, 4, 4}, {0, 0, 0}, {2, 2, 2}, {1, 1, 1}, {3, 3, 3}}}, 1, 0);
    EXPECT_EQ(star.cyclic_order(star.exceptional()), (std::vector<int>{0, 1, 2, 3, 4}));
}

TEST(HlmTree, SuccessorRuleIsSingleCycle) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        auto t = gen::random_hlm_tree(rng, 8, 5, 3);
        const auto order = t.cyclic_order(t.exceptional());
        ASSERT_EQ(order.size(), t.branches.size());
        // Exceptional edges are exactly the branch starts, and each successor starts at M+1.
        for (std::size_t k = 0; k < order.size(); ++k) {
            const auto& b = t.branch_of(order[k]);
            EXPECT_EQ(b.m, order[k]);
            EXPECT_EQ(order[(k + 1) % order.size()], (b.M + 1) % t.h0);
        }
        EXPECT_NO_THROW(check_tree(t));
    }
}

TEST(StarTree, Examples) {
    auto s = build_star_tree(7, 3, 2);
    EXPECT_EQ(s.h0, 3);
    EXPECT_EQ(s.multiplicity, 2);
    EXPECT_EQ(s.cyclic_order(s.exceptional()), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(s.zeta_lift.value(), 2u);
    auto trivial = build_star_tree(11, 1, 1);
    EXPECT_EQ(trivial.h0, 1);
    EXPECT_EQ(trivial.multiplicity, 10);
    auto big = build_star_tree(49, 3, 18);
    EXPECT_EQ(big.multiplicity, 16);
    EXPECT_EQ(big.zeta_lift.value(), 18u);
    EXPECT_EQ(code_of([] { build_star_tree(7, 3, 3); }), ErrorCode::BadAction);
    EXPECT_EQ(code_of([] { build_star_tree(49, 3, 2); }), ErrorCode::BadAction);
}

TEST(DecompositionMatrix, Star) {
    auto D = decomposition_matrix(build_star_tree(7, 3, 2));
    std::vector<std::vector<int>> expect{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 1, 1}};
    EXPECT_EQ(D.rows, expect);
    EXPECT_EQ(cartan_matrix(D), (IntMatrix{{3, 2, 2}, {2, 3, 2}, {2, 2, 3}}));
    EXPECT_EQ(cartan_matrix(decomposition_matrix(build_star_tree(7, 1, 1))), (IntMatrix{{7}}));
}

TEST(DecompositionMatrix, Lines) {
    auto D = decomposition_matrix(line_tree(3, 2, 1));
    // Edge at the exceptional node: χ_0 and both exceptional rows.
    EXPECT_EQ(D.rows[0][0], 1);
    EXPECT_EQ(D.rows[3][0], 1);
    EXPECT_EQ(D.rows[4][0], 1);
    // Interior edge S_2: χ_2 and χ_1 only.
    for (std::size_t r = 0; r < D.rows.size(); ++r) EXPECT_EQ(D.rows[r][2], (r == 1 || r == 2) ? 1 : 0);
    EXPECT_EQ(cartan_matrix(decomposition_matrix(line_tree(2, 1, 1))), (IntMatrix{{2, 1}, {1, 2}}));
}

TEST(DecompositionMatrix, ColumnsHaveTwoConstituentsAndCartanSymmetric) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        auto t = gen::random_hlm_tree(rng, 7, 4, 3);
        auto D = decomposition_matrix(t);
        auto coll = D.collapsed();
        for (int j = 0; j < t.h0; ++j) {
            int s = 0;
            for (const auto& row : coll) s += row[static_cast<std::size_t>(j)];
            EXPECT_EQ(s, 2);
        }
        auto C = cartan_matrix(D);
        for (std::size_t a = 0; a < C.size(); ++a)
            for (std::size_t b = 0; b < C.size(); ++b) EXPECT_EQ(C[a][b], C[b][a]);
    }
}

TEST(Unitriangular, HeightOrderingAlwaysWorks) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        auto t = gen::random_hlm_tree(rng, 8, 4, 3);
        auto res = check_unitriangular(decomposition_matrix(t), height_ordering(t));
        EXPECT_TRUE(res.ok) << res.reason;
    }
    auto star = build_star_tree(7, 3, 2);
    EXPECT_TRUE(check_unitriangular(decomposition_matrix(star), {0, 1, 2}).ok);
}

TEST(Unitriangular, ReversedBranchFails) {
    auto t = line_tree(3, 1, 1);
    auto res = check_unitriangular(decomposition_matrix(t), {0, 1, 2});
    EXPECT_FALSE(res.ok);
    EXPECT_FALSE(res.reason.empty());
    EXPECT_TRUE(check_unitriangular(decomposition_matrix(t), {2, 1, 0}).ok);
}

TEST(Unitriangular, AnnotationOrdering) {
    auto t = g2ree_tree(ree_ctx());
    EXPECT_EQ(code_of([&] { annotation_ordering(t, false); }), ErrorCode::MissingAnnotations);
    EXPECT_EQ(annotation_ordering(t, true), height_ordering(t));
    // a(St) = N = 6, a(1) = 0, cuspidal characters a = 1.
    const i64 a[] = {6, 0, 1, 1, 1, 1};
    for (int j = 0; j < 6; ++j) t.vertices[static_cast<std::size_t>(j)].a_chi = a[j];
    EXPECT_TRUE(check_unitriangular(decomposition_matrix(t), annotation_ordering(t, false)).ok);
}

TEST(Heights, PerversityFormula) {
    auto t = line_tree(3, 1, 1);
    EXPECT_EQ(perversity(t, 0), -2);
    EXPECT_EQ(perversity(t, 2), 0);
    EXPECT_EQ(height(t, 2), 2);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(height(build_star_tree(7, 3, 2), j), 0);
}

TEST(NChi, FormulaAndMonotonicity) {
    auto t = line_tree(2, 1, 1);
    EXPECT_EQ(code_of([&] { n_chi(t, 0, 3); }), ErrorCode::MissingAnnotations);
    // A2-like: St = χ_0 (a = 3, A = 3), 1 = χ_1 (a = 0, A = 0); h = 3.
    t.vertices[0].a_chi = 3;
    t.vertices[0].A_chi = 3;
    t.vertices[1].a_chi = 0;
    t.vertices[1].A_chi = 0;
    EXPECT_EQ(n_chi(t, 0, 3), Rational(0));
    EXPECT_EQ(n_chi(t, 1, 3), Rational(2));
    EXPECT_TRUE(n_chi_monotone(t, 3));
    t.vertices[1].A_chi = 3;
    t.vertices[1].a_chi = 3;
    EXPECT_FALSE(n_chi_monotone(t, 3));
    auto u = line_tree(1, 1, 1);
    u.vertices[0].a_chi = 1;
    u.vertices[0].A_chi = 2;
    EXPECT_EQ(n_chi(u, 0, 3), Rational(1));
}

TEST(TreeJson, RoundTrip) {
    for (auto t : {build_star_tree(7, 3, 2), g2ree_tree(ree_ctx()), line_tree(4, 3, 2)}) {
        auto j = to_json(t);
        EXPECT_EQ(tree_from_json(j), t);
        EXPECT_EQ(tree_from_json_text(j.dump()), t);
    }
}

TEST(TreeJson, ParseErrorsCarryLocations) {
    auto loc = [](const std::string& text) {
        try {
            tree_from_json_text(text);
        } catch (const ParseError& e) {
            return e.location();
        }
        return std::string("no error");
    };
    EXPECT_EQ(loc(R"({"h0":3,"r":1,"multiplicity":1,"branches":[]})"), "/branches");
    EXPECT_EQ(loc(R"({"h0":3,"r":1,"multiplicity":1})"), "/branches");
    EXPECT_EQ(loc(R"({"h0":3,"r":1,"multiplicity":1,"branches":[{"zeta":0,"m":0,"M":"x"}]})"), "/branches/0/M");
    EXPECT_EQ(loc(R"({"h0":3,"r":1,"multiplicity":1,"branches":[{"zeta":0,"m":0,"M":1}]})"), "/branches");
    EXPECT_EQ(loc(R"({"h0":2,"r":1,"multiplicity":1,"branches":[{"zeta":0,"m":0,"M":0},{"zeta":1,"m":1,"M":1}],"cyclic_order":[0,0]})"),
              "/cyclic_order");
    EXPECT_EQ(loc("{not json"), "byte 3");
    EXPECT_EQ(loc(R"({"h0":1,"r":0,"multiplicity":1,"branches":[{"zeta":0,"m":0,"M":0}]})"), "no error");
}

TEST(TreeJson, CustomCyclicOrderIsKept) {
    auto t = tree_from_json_text(
        R"({"h0":3,"r":0,"multiplicity":2,"branches":[{"zeta":0,"m":0,"M":0},{"zeta":1,"m":1,"M":1},{"zeta":2,"m":2,"M":2}],"cyclic_order":[0,2,1]})");
    EXPECT_EQ(t.cyclic_order(t.exceptional()), (std::vector<int>{0, 2, 1}));
}

TEST(TreeDot, ReeGolden) {
    const std::string dot = to_dot(g2ree_tree(ree_ctx()));
    std::ifstream in(std::string(COXBRAUER_GOLDEN_DIR) + "/2g2.dot");
    ASSERT_TRUE(in.good());
    std::stringstream golden;
    golden << in.rdbuf();
    EXPECT_EQ(dot, golden.str());
    // 7 nodes, 6 edges.
    std::size_t edges = 0, pos = 0;
    while ((pos = dot.find(" -- ", pos)) != std::string::npos) {
        ++edges;
        ++pos;
    }
    EXPECT_EQ(edges, 6u);
}
