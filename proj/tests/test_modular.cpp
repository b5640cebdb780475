#include <coxbrauer/cyclotomic.hpp>
#include <coxbrauer/modular.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace coxbrauer;

TEST(Modular, PrimalityMatchesTrialDivision) {
    auto slow = [](u64 n) {
        if (n < 2) return false;
        for (u64 d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    for (u64 n = 0; n < 5000; ++n) EXPECT_EQ(is_prime(n), slow(n)) << n;
    EXPECT_TRUE(is_prime(1000003));
    EXPECT_FALSE(is_prime(1000001));
}

TEST(Modular, InverseAndOrder) {
    EXPECT_EQ(invmod(3, 7).value(), 5);
    EXPECT_FALSE(invmod(7, 49).has_value());
    EXPECT_EQ(multiplicative_order(2, 7), 3u);
    EXPECT_EQ(multiplicative_order(8, 19), 6u);
    EXPECT_EQ(multiplicative_order(18, 49), 3u);
}

TEST(Modular, SquareRootsModPrime) {
    for (u64 p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 101u}) {
        for (u64 x = 1; x < p; ++x) {
            auto r = sqrt_mod(x, p);
            bool residue = false;
            for (u64 y = 1; y < p; ++y) residue |= (y * y) % p == x;
            EXPECT_EQ(r.has_value(), residue) << x << " mod " << p;
            if (r) {
                EXPECT_EQ(mulmod(*r, *r, p), x);
                EXPECT_LE(*r, p - *r);
            }
        }
    }
}

TEST(Modular, Fp2SquareRootOfNonResidue) {
    // 27 ≡ 8 mod 19; 8 is not a square mod 19, so √27 lives in F_{19^2}.
    const u64 p = 19;
    ASSERT_FALSE(sqrt_mod(8, p).has_value());
    auto [r1, r2] = sqrt_fp2(8, p);
    EXPECT_EQ(r1 * r1, Fp2::base(8, p));
    EXPECT_EQ(r2 * r2, Fp2::base(8, p));
    EXPECT_TRUE(r1.lex_less(r2));
}

TEST(Modular, Valuation) {
    EXPECT_EQ(valuation(49 * 3, 7), 2);
    EXPECT_EQ(valuation(19, 19), 1);
    EXPECT_EQ(valuation(20, 19), 0);
}

TEST(Cyclotomic, PolynomialsOfSmallOrder) {
    EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<i64>{-1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(3), (std::vector<i64>{1, 1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<i64>{1, 0, -1, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(8), (std::vector<i64>{1, 0, 0, 0, 1}));
}

TEST(Cyclotomic, RootsOfUnitySumToZero) {
    for (i64 L : {2, 3, 5, 6, 12, 24}) {
        Cyclotomic s(L);
        for (i64 k = 0; k < L; ++k) s += Cyclotomic::zeta_power(k, L);
        EXPECT_TRUE(s.is_zero()) << L;
    }
}

TEST(Cyclotomic, SquareRootsOfTwoAndThree) {
    auto r2 = sqrt_p_cyclotomic(2, 24);
    auto r3 = sqrt_p_cyclotomic(3, 24);
    EXPECT_EQ((r2 * r2).as_integer().value(), 2);
    EXPECT_EQ((r3 * r3).as_integer().value(), 3);
    EXPECT_FALSE(r2.as_integer().has_value());
}

TEST(Cyclotomic, EmbeddingPreservesEquality) {
    auto z = Cyclotomic::root(Rational(1, 3), 3);
    EXPECT_EQ(z, Cyclotomic::root(Rational(4, 12), 12));
    EXPECT_EQ(z * z.conj(), Cyclotomic::integer(1, 3));
}

TEST(Cyclotomic, QuadIntDivision) {
    QuadInt a{7, 3, 2}, b{1, 1, 2};
    auto prod = a * b;
    auto back = prod.divide(b);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, a);
    EXPECT_FALSE((QuadInt{1, 0, 2}).divide(QuadInt{3, 0, 2}).has_value());
}

TEST(TruncatedPadic, CanonicalRepresentative) {
    auto x = TruncatedPadic::make(-1, 7, 2);
    EXPECT_EQ(x.value, 48u);
    EXPECT_EQ(x.truncated(1).value, 6u);
    EXPECT_EQ(x.residue(), 6u);
}
