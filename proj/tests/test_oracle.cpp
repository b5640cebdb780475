#include <coxbrauer/oracle.hpp>

#include <gtest/gtest.h>

using namespace coxbrauer;

namespace {

std::vector<std::vector<int>> star_matrix(int m, int exc) {
    std::vector<std::vector<int>> rows;
    for (int j = 0; j < m; ++j) {
        std::vector<int> r(static_cast<std::size_t>(m), 0);
        r[static_cast<std::size_t>(j)] = 1;
        rows.push_back(r);
    }
    for (int k = 0; k < exc; ++k) rows.push_back(std::vector<int>(static_cast<std::size_t>(m), 1));
    return rows;
}

} // namespace

TEST(Metacyclic, GroupLaw) {
    auto G = MetacyclicGroup::make(7, 3, 2);
    const std::size_t x = G.element(1, 0), y = G.element(0, 1);
    // x·y·x^{-1} = y^2, i.e. x·y = y^2·x.
    EXPECT_EQ(G.mul(x, y), G.mul(G.element(0, 2), x));
    std::size_t acc = 0;
    for (int i = 0; i < 3; ++i) acc = G.mul(acc, x);
    EXPECT_EQ(acc, 0u);
    EXPECT_THROW(MetacyclicGroup::make(7, 3, 3), Error);
    EXPECT_THROW(MetacyclicGroup::make(49, 3, 2), Error);
    EXPECT_THROW(MetacyclicGroup::make(12, 1, 1), Error);
}

TEST(Metacyclic, CharacterTable21) {
    auto T = character_table(MetacyclicGroup::make(7, 3, 2));
    EXPECT_EQ(T.classes.size(), 5u);
    ASSERT_EQ(T.names.size(), 5u);
    i64 sum = 0;
    for (const auto& row : T.values) {
        auto deg = row[0].as_integer();
        ASSERT_TRUE(deg);
        sum += *deg * *deg;
    }
    EXPECT_EQ(sum, 21);
    EXPECT_EQ(*T.values[3][0].as_integer(), 3);
}

TEST(Metacyclic, CyclicGroup) {
    auto G = MetacyclicGroup::make(5, 1, 1);
    auto T = character_table(G);
    EXPECT_EQ(T.names.size(), 5u);
    for (const auto& row : T.values) EXPECT_EQ(*row[0].as_integer(), 1);
    auto D = brute_decomposition_matrix(G);
    for (const auto& r : D.rows) EXPECT_EQ(r, std::vector<int>{1});
}

TEST(Metacyclic, DecompositionMatrices) {
    EXPECT_EQ(brute_decomposition_matrix(MetacyclicGroup::make(7, 3, 2)).rows, star_matrix(3, 2));
    EXPECT_EQ(brute_decomposition_matrix(MetacyclicGroup::make(49, 3, 18)).rows, star_matrix(3, 16));
    EXPECT_EQ(brute_decomposition_matrix(MetacyclicGroup::make(13, 4, 5)).rows, star_matrix(4, 3));
}

TEST(Metacyclic, CartanFromOracle) {
    for (auto [d, e, n] : {std::tuple<u64, int, u64>{7, 3, 2}, {13, 4, 5}, {11, 5, 3}}) {
        auto G = MetacyclicGroup::make(d, e, n);
        auto D = brute_decomposition_matrix(G);
        auto t = build_star_tree(d, e, n);
        auto A = from_tree(t, G.ell);
        const auto cartan = A.hom_dimensions();
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j) {
                i64 s = 0;
                for (const auto& r : D.rows) s += r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(j)];
                EXPECT_EQ(s, cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            }
        EXPECT_EQ(D.multiplicity, exceptional_multiplicity(static_cast<i64>(d), e));
    }
}

TEST(Metacyclic, GroupExtQuiver) {
    // Independent of the tree: arrows k_{i+1} → k_i in the ζ = n numbering.
    auto E = group_ext_matrix(MetacyclicGroup::make(7, 3, 2), 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(E[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], (i == (j + 1) % 3) ? 1 : 0);
}

TEST(Metacyclic, VerifyStar) {
    for (auto [d, e, n] : {std::tuple<u64, int, u64>{7, 3, 2}, {7, 3, 4}, {49, 3, 18}, {13, 4, 5}, {5, 2, 4}}) {
        auto rep = verify_star(build_star_tree(d, e, n), MetacyclicGroup::make(d, e, n));
        EXPECT_TRUE(rep.match);
    }
    auto rep = verify_star(build_star_tree(7, 3, 2), MetacyclicGroup::make(7, 3, 2));
    EXPECT_EQ(rep.oracle_matrix.rows, star_matrix(3, 2));
}

TEST(Metacyclic, RotatedNumbering) {
    // n = 4 = 2^2: the ζ lift differs from the n = 2 group and the Ext
    // quiver is traversed in the opposite direction.
    auto t4 = build_star_tree(7, 3, 4);
    EXPECT_EQ(*t4.zeta_lift % 7, 4u);
    EXPECT_NE(eta_shift(MetacyclicGroup::make(7, 3, 4), 4), eta_shift(MetacyclicGroup::make(7, 3, 2), 2));
    try {
        verify_star(build_star_tree(7, 3, 2), MetacyclicGroup::make(7, 3, 4));
        FAIL() << "expected Mismatch";
    } catch (const Mismatch& m) {
        EXPECT_GE(m.row(), 0);
        EXPECT_GE(m.col(), 0);
    }
    EXPECT_THROW(verify_star(build_star_tree(7, 3, 2), MetacyclicGroup::make(7, 6, 3)), Mismatch);
}
