#include <coxbrauer/ell_arith.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace coxbrauer;

namespace {

CoxeterDatum A2() { return coxeter_datum({Family::A, 2}); }
CoxeterDatum G2Ree() { return coxeter_datum({Family::G2Ree, 2}); }

// Brute-force kernel dimension over F_p by enumerating all vectors (tiny n).
std::size_t brute_kernel_dim(const Matrix& A, u64 p) {
    const std::size_t n = A.cols;
    std::size_t total = 1, count = 0;
    for (std::size_t i = 0; i < n; ++i) total *= p;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<u64> x(n);
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = c % p;
            c /= p;
        }
        bool zero = true;
        for (std::size_t r = 0; r < A.rows && zero; ++r) {
            u64 s = 0;
            for (std::size_t j = 0; j < n; ++j) s = (s + A(r, j) * x[j]) % p;
            zero = s == 0;
        }
        count += zero;
    }
    std::size_t dim = 0;
    while (count > 1) {
        count /= p;
        ++dim;
    }
    return dim;
}

Matrix diag(std::vector<u64> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

} // namespace

TEST(ValidateEll, A2AtTwoModSeven) {
    auto ctx = validate_ell(A2(), 2, 7);
    EXPECT_EQ(ctx.q_mod, Fp2::base(2, 7));
    EXPECT_EQ(ctx.qdelta_mod, 2u);
    EXPECT_EQ(ctx.torus_order, 7);
    EXPECT_EQ(ctx.torus_valuation, 1);
    EXPECT_EQ(ctx.precision, 3);
    EXPECT_EQ(eigenvalue_table(ctx), (std::vector<u64>{1, 2, 4}));
    // δ = 1, h = 3: q^2 squares to q^4 = q, so √q is the power q^2 = 4.
    EXPECT_EQ(ctx.sqrt_qdelta, Fp2::base(4, 7));
}

TEST(ValidateEll, ReeGroupAt27Mod19) {
    auto ctx = validate_ell(G2Ree(), 27, 19);
    EXPECT_FALSE(ctx.q_in_prime_field());
    EXPECT_EQ(ctx.qdelta_mod, 8u);
    EXPECT_EQ(ctx.torus_order, 19);
    EXPECT_EQ(eigenvalue_table(ctx), (std::vector<u64>{1, 8, 7, 18, 11, 12}));
    EXPECT_EQ(order_fp2(ctx.q_mod), 12u);
    EXPECT_EQ(ctx.sqrt_qdelta, ctx.q_mod);
}

TEST(ValidateEll, RejectionReasons) {
    auto reason = [](auto&& f) {
        try {
            f();
        } catch (const BadRegime& e) {
            return e.reason();
        }
        return RegimeReason::NotPrime;
    };
    EXPECT_EQ(reason([] { validate_ell(A2(), 2, 3); }), RegimeReason::DividesWeylOrder);
    EXPECT_EQ(reason([] { validate_ell(A2(), 2, 5); }), RegimeReason::NotDividing);
    EXPECT_EQ(reason([] { validate_ell(A2(), 4, 2); }), RegimeReason::DividesQ);
    EXPECT_EQ(reason([] { validate_ell(A2(), 2, 9); }), RegimeReason::NotPrime);
    // 2A2 at q = 2: |T_c| = q^2 − q + 1 = 3, but 2 has order 2 mod 3, not 6.
    EXPECT_EQ(reason([] { validate_ell(coxeter_datum({Family::A2, 2}), 2, 3); }), RegimeReason::WrongOrder);
    EXPECT_THROW(validate_ell(G2Ree(), 9, 7), Error);
}

TEST(ValidateEll, EigenvalueTableIsFullCyclicGroup) {
    struct Case {
        TwistedType t;
        u64 q, ell;
    };
    const Case cases[] = {{{Family::A, 2}, 2, 7},        {{Family::A, 3}, 3, 5},   {{Family::A2, 2}, 3, 7},
                          {{Family::D3, 4}, 2, 13},      {{Family::G2, 2}, 3, 7},  {{Family::B2Suzuki, 2}, 8, 5},
                          {{Family::G2Ree, 2}, 27, 19},  {{Family::E8, 8}, 2, 331}};
    for (const auto& c : cases) {
        auto ctx = validate_ell(coxeter_datum(c.t), c.q, c.ell);
        auto table = eigenvalue_table(ctx);
        ASSERT_EQ(table.size(), static_cast<std::size_t>(ctx.datum.h0));
        std::set<u64> roots;
        for (u64 x = 1; x < c.ell; ++x)
            if (powmod(x, static_cast<u64>(ctx.datum.h0), c.ell) == 1) roots.insert(x);
        EXPECT_EQ(std::set<u64>(table.begin(), table.end()), roots) << c.t.name();
    }
}

TEST(ValidateEll, PrecisionOverride) {
    setenv("COXBRAUER_PRECISION", "5", 1);
    EXPECT_EQ(validate_ell(A2(), 2, 7).precision, 5);
    setenv("COXBRAUER_PRECISION", "zero", 1);
    EXPECT_THROW(validate_ell(A2(), 2, 7), Error);
    unsetenv("COXBRAUER_PRECISION");
}

TEST(Hensel, CubeRootOfUnityModulo49) {
    auto x = hensel_root(TruncatedPadic::make(1, 7, 2), 3, 2);
    EXPECT_EQ(x.value, 30u);
    // Exhaustive oracle: the only cube roots of 1 mod 49 lifting 2.
    std::vector<u64> lifts;
    for (u64 y = 0; y < 49; ++y)
        if (y % 7 == 2 && powmod(y, 3, 49) == 1) lifts.push_back(y);
    EXPECT_EQ(lifts, (std::vector<u64>{30}));
}

TEST(Hensel, TrivialAndFailing) {
    EXPECT_EQ(hensel_root(TruncatedPadic::make(1, 11, 4), 3, 1).value, 1u);
    EXPECT_THROW(hensel_root(TruncatedPadic::make(1, 7, 2), 3, 3), Error);
    EXPECT_THROW(hensel_root(TruncatedPadic::make(1, 7, 2), 7, 1), Error);
}

TEST(Hensel, ExhaustiveAgreementSmallModuli) {
    for (u64 ell : {3u, 5u, 7u, 11u}) {
        for (int N = 1; N <= 3; ++N) {
            const u64 mod = TruncatedPadic::modulus_of(ell, N);
            for (u64 e : {2u, 3u, 4u, 6u}) {
                if (e % ell == 0) continue;
                for (u64 seed = 1; seed < ell; ++seed) {
                    const u64 a = powmod(seed, e, mod);
                    auto x = hensel_root(TruncatedPadic{a, ell, N}, e, seed);
                    std::vector<u64> roots;
                    for (u64 y = seed; y < mod; y += ell)
                        if (powmod(y, e, mod) == a) roots.push_back(y);
                    ASSERT_EQ(roots.size(), 1u);
                    EXPECT_EQ(x.value, roots[0]);
                }
            }
        }
    }
}

TEST(Hensel, PrecisionTowerProperty) {
    std::mt19937_64 rng(20240611);
    const u64 primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    for (int trial = 0; trial < 50; ++trial) {
        const u64 ell = primes[rng() % 10];
        u64 e = 1 + rng() % 12;
        while (e % ell == 0) ++e;
        const int high = 2 + static_cast<int>(rng() % 4), low = 1 + static_cast<int>(rng() % (high - 1));
        const u64 seed = 1 + rng() % (ell - 1);
        // a is a random lift of seed^e.
        const u64 mod = TruncatedPadic::modulus_of(ell, high);
        const u64 a = (powmod(seed, e, ell) + ell * (rng() % (mod / ell))) % mod;
        auto hi = hensel_root(TruncatedPadic{a, ell, high}, e, seed);
        auto lo = hensel_root(TruncatedPadic{a, ell, high}.truncated(low), e, seed);
        EXPECT_EQ(hi.truncated(low), lo) << "trial " << trial;
        EXPECT_EQ(powmod(hi.value, e, mod), a);
    }
}

TEST(Hensel, BinomialSeriesOracle) {
    // x = (1 + ℓu)^{1/e} = Σ binom(1/e, k) (ℓu)^k, truncated; exact rationals.
    using BR = boost::rational<BigInt>;
    for (u64 ell : {5u, 7u, 13u}) {
        for (u64 e : {2u, 3u, 4u}) {
            const int N = 4;
            const u64 mod = TruncatedPadic::modulus_of(ell, N);
            for (u64 u = 1; u < 4; ++u) {
                const BigInt xval = BigInt(ell) * u;
                BR sum(1), term(1);
                for (int k = 1; k < 3 * N; ++k) {
                    term *= BR(BigInt(1), BigInt(e)) - BR(k - 1);
                    term /= BR(k);
                    BR power(1);
                    for (int i = 0; i < k; ++i) power *= BR(xval);
                    sum += term * power;
                }
                // Denominators are units mod ℓ since gcd(e, ℓ) = 1.
                const u64 num = big_mod(sum.numerator(), mod), den = big_mod(sum.denominator(), mod);
                const u64 series = mulmod(num, *invmod(den, mod), mod);
                auto x = hensel_root(TruncatedPadic::make(static_cast<i64>(1 + ell * u), ell, N), e, 1);
                EXPECT_EQ(x.value, series) << ell << " " << e << " " << u;
            }
        }
    }
}

TEST(Linalg, CharpolyMatchesCofactorExpansion) {
    std::mt19937_64 rng(7);
    const u64 mod = 343;
    for (int trial = 0; trial < 20; ++trial) {
        Matrix M(3, 3);
        for (auto& x : M.a) x = rng() % mod;
        auto P = charpoly(M, mod);
        ASSERT_EQ(P.size(), 4u);
        EXPECT_EQ(P[3], 1u);
        // Cayley–Hamilton as oracle.
        EXPECT_TRUE(poly_eval_matrix(P, M, mod).is_zero());
        u64 tr = (M(0, 0) + M(1, 1) + M(2, 2)) % mod;
        EXPECT_EQ(P[2], (mod - tr) % mod);
    }
}

TEST(LambdaEigenspace, DiagonalExamples) {
    EXPECT_EQ(lambda_eigenspace(diag({1, 8}), 1, 7, 2).cols, 2u);
    auto b = lambda_eigenspace(diag({1, 2}), 1, 7, 2);
    ASSERT_EQ(b.cols, 1u);
    EXPECT_EQ(b(1, 0), 0u);
    EXPECT_NE(b(0, 0) % 7, 0u);
    EXPECT_EQ(lambda_eigenspace(diag({1, 2}), 3, 7, 2).cols, 0u);
}

TEST(LambdaEigenspace, UpperTriangularAgainstBruteForceKernel) {
    std::mt19937_64 rng(11);
    const u64 ell = 7;
    const int N = 2;
    const u64 mod = 49;
    for (int trial = 0; trial < 20; ++trial) {
        Matrix M(4, 4);
        const u64 d[] = {1, 1, 2, 4};
        for (std::size_t i = 0; i < 4; ++i) {
            M(i, i) = (d[i] + ell * (rng() % ell)) % mod;
            for (std::size_t j = i + 1; j < 4; ++j) M(i, j) = rng() % mod;
        }
        auto B = lambda_eigenspace(M, 1, ell, N);
        EXPECT_EQ(B.cols, 2u);
        // P_λ̄(M) = (M − 1)^2 mod ℓ has kernel of the same dimension.
        Matrix Mb = mat_reduce(M, ell);
        Matrix shifted = mat_sub(Mb, Matrix::identity(4), ell);
        EXPECT_EQ(brute_kernel_dim(mat_mul(shifted, shifted, ell), ell), 2u);
        // The summand is M-invariant and killed by (M − λ)^k mod ℓ.
        EXPECT_TRUE(mat_mul(mat_mul(shifted, shifted, ell), mat_reduce(B, ell), ell).is_zero());
        const Poly e = lambda_idempotent(M, 1, ell, N);
        const Matrix E = poly_eval_matrix(e, M, mod);
        EXPECT_EQ(mat_mul(E, E, mod), E);
        const Matrix MB = mat_mul(M, B, mod);
        EXPECT_EQ(mat_mul(E, MB, mod), MB);
    }
}

TEST(LambdaEigenspace, NilpotentPerturbationKeepsRanks) {
    std::mt19937_64 rng(5);
    const u64 ell = 5, mod = 125;
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5;
        Matrix U(n, n), V(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            U(i, i) = rng() % mod;
            V(i, i) = (U(i, i) + ell * (rng() % 25)) % mod;
            for (std::size_t j = i + 1; j < n; ++j) {
                U(i, j) = rng() % mod;
                V(i, j) = rng() % mod;
            }
        }
        auto du = lambda_decompose(U, ell, 3), dv = lambda_decompose(V, ell, 3);
        ASSERT_EQ(du.size(), dv.size());
        for (std::size_t k = 0; k < du.size(); ++k) {
            EXPECT_EQ(du[k].lambda, dv[k].lambda);
            EXPECT_EQ(du[k].basis.cols, dv[k].basis.cols);
        }
    }
}

TEST(LambdaDecompose, Examples) {
    auto d = lambda_decompose(diag({1, 2, 4}), 7, 1);
    ASSERT_EQ(d.size(), 3u);
    for (const auto& s : d) EXPECT_EQ(s.basis.cols, 1u);

    Matrix nil(3, 3);
    nil(0, 1) = 1;
    nil(1, 2) = 3;
    auto dn = lambda_decompose(nil, 7, 2);
    ASSERT_EQ(dn.size(), 1u);
    EXPECT_EQ(dn[0].lambda, 0u);
    EXPECT_EQ(dn[0].basis.cols, 3u);

    // Companion matrix of (T − 1)(T − 8) = T^2 − 9T + 8 over Z/19^2.
    const u64 mod = 361;
    Matrix C(2, 2);
    C(0, 1) = (mod - 8) % mod;
    C(1, 0) = 1;
    C(1, 1) = 9;
    auto dc = lambda_decompose(C, 19, 2);
    ASSERT_EQ(dc.size(), 2u);
    EXPECT_EQ(dc[0].lambda, 1u);
    EXPECT_EQ(dc[1].lambda, 8u);
    // Explicit idempotent: e_1 = (T − 8)/(1 − 8) = (8 − T)/7 mod 361.
    const u64 inv7 = *invmod(7, mod);
    Poly expected{mulmod(8, inv7, mod), mulmod(mod - 1, inv7, mod)};
    EXPECT_EQ(lambda_idempotent(C, 1, 19, 2), expected);
}

TEST(LambdaDecompose, NotSplit) {
    // T^2 + 1 is irreducible over F_7.
    Matrix R(2, 2);
    R(0, 1) = 6;
    R(1, 0) = 1;
    try {
        lambda_decompose(R, 7, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotSplit);
    }
}
