#pragma once

// The Coxeter-case ℓ-regime, eigenvalue congruences, Hensel lifting and
// generalized (λ)-eigenspaces over Z/ℓ^N.

#include <coxbrauer/cyclotomic.hpp>
#include <coxbrauer/error.hpp>
#include <coxbrauer/linalg.hpp>
#include <coxbrauer/modular.hpp>
#include <coxbrauer/root_data.hpp>

#include <cstdlib>
#include <set>
#include <string>
#include <vector>

namespace coxbrauer {

struct EllContext {
    CoxeterDatum datum;
    u64 ell = 0;
    u64 qsq = 0;            // q² for Suzuki/Ree types, q otherwise
    Fp2 q_mod;              // q in F_ℓ or F_{ℓ²}
    u64 qdelta_mod = 0;     // q^δ in F_ℓ
    Fp2 sqrt_qdelta;        // the chosen square root of q^δ
    int precision = 1;      // N, working modulo ℓ^N
    BigInt torus_order;     // |T_c| evaluated at q
    int torus_valuation = 0; // v_ℓ(|T_c|)

    bool q_in_prime_field() const { return q_mod.in_prime_field(); }
};

inline int valuation(const BigInt& n, u64 p) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "valuation of zero");
    BigInt x = n < 0 ? BigInt(-n) : n;
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

inline u64 big_mod(const BigInt& n, u64 m) {
    BigInt r = n % m;
    if (r < 0) r += m;
    return static_cast<u64>(r);
}

/// Largest N with ℓ^N below 2^62, at least 1.
inline int max_precision(u64 ell) {
    int n = 0;
    unsigned __int128 m = 1;
    while (m * ell < (static_cast<unsigned __int128>(1) << 62)) {
        m *= ell;
        ++n;
    }
    return std::max(n, 1);
}

inline int precision_override_or(int fallback) {
    if (const char* env = std::getenv("COXBRAUER_PRECISION")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            fail(ErrorCode::InvalidArgument, std::string("COXBRAUER_PRECISION must be a positive integer, got '") + env + "'");
        return static_cast<int>(v);
    }
    return fallback;
}

inline EllContext validate_ell(const CoxeterDatum& datum, u64 qsq, u64 ell) {
    const int rp = datum.radical_prime();
    auto pp = as_prime_power(qsq);
    if (!pp) fail(ErrorCode::InvalidArgument, "q must be a prime power, got " + std::to_string(qsq));
    if (rp && (pp->prime != static_cast<u64>(rp) || pp->exponent % 2 == 0))
        fail(ErrorCode::InvalidArgument, "for " + datum.type.name() + ", q^2 must be an odd power of " + std::to_string(rp));

    if (!is_prime(ell)) throw BadRegime(RegimeReason::NotPrime, std::to_string(ell) + " is not prime");
    if (pp->prime == ell) throw BadRegime(RegimeReason::DividesQ, "ell divides q");
    const BigInt weyl = weyl_fixed_order(datum);
    if (weyl % ell == 0)
        throw BadRegime(RegimeReason::DividesWeylOrder,
                        std::to_string(ell) + " divides |W^F| = " + weyl.str());

    const QuadInt t = torus_order_poly(datum).evaluate(qsq);
    const BigInt torus = t.is_integer() ? t.a : t.norm();
    if (torus % ell != 0)
        throw BadRegime(RegimeReason::NotDividing,
                        std::to_string(ell) + " does not divide |T_c| = " + torus.str());

    EllContext ctx;
    ctx.datum = datum;
    ctx.ell = ell;
    ctx.qsq = qsq;
    ctx.torus_order = torus;
    ctx.torus_valuation = valuation(torus, ell);
    if (rp) {
        ctx.q_mod = sqrt_fp2(qsq % ell, ell).first;
    } else {
        ctx.q_mod = Fp2::base(qsq, ell);
    }
    const u64 ord = order_fp2(ctx.q_mod);
    if (ord != static_cast<u64>(datum.h))
        throw BadRegime(RegimeReason::WrongOrder,
                        "q has order " + std::to_string(ord) + " mod " + std::to_string(ell) + ", expected h = " +
                            std::to_string(datum.h));
    if (!ctx.q_mod.in_prime_field()) {
        // q ∉ F_ℓ: only q² is visible in F_ℓ, and must be a primitive (h/2)-th root with (q²)^{h/4} = −1.
        const u64 q2 = qsq % ell;
        if (datum.h % 4 != 0 || multiplicative_order(q2, ell) != static_cast<u64>(datum.h / 2) ||
            powmod(q2, static_cast<u64>(datum.h / 4), ell) != ell - 1)
            throw BadRegime(RegimeReason::WrongOrder, "q^2 fails the twisted order check");
    }
    const Fp2 qd = ctx.q_mod.pow(static_cast<u64>(datum.delta));
    if (!qd.in_prime_field()) fail(ErrorCode::IntegralityFailure, "q^delta does not lie in F_ell");
    ctx.qdelta_mod = qd.a;
    if (multiplicative_order(ctx.qdelta_mod, ell) != static_cast<u64>(datum.h0))
        throw BadRegime(RegimeReason::WrongOrder, "q^delta does not have order h0");

    // Square root of q^δ: the power q^k with 2k ≡ δ (mod h) and k minimal, if any.
    bool found = false;
    for (int k = 0; k < datum.h && !found; ++k) {
        if ((2 * k - datum.delta) % datum.h == 0) {
            ctx.sqrt_qdelta = ctx.q_mod.pow(static_cast<u64>(k));
            found = true;
        }
    }
    if (!found) ctx.sqrt_qdelta = sqrt_fp2(ctx.qdelta_mod, ell).first;

    ctx.precision = std::min(precision_override_or(2 * ctx.torus_valuation + 1), max_precision(ell));
    return ctx;
}

/// j ↦ (q^δ)^j in F_ℓ for j = 0..h0−1.
inline std::vector<u64> eigenvalue_table(const EllContext& ctx) {
    std::vector<u64> out;
    u64 x = 1;
    for (int j = 0; j < ctx.datum.h0; ++j) {
        out.push_back(x);
        x = mulmod(x, ctx.qdelta_mod, ctx.ell);
    }
    std::set<u64> distinct(out.begin(), out.end());
    if (distinct.size() != out.size() || x != 1)
        fail(ErrorCode::IntegralityFailure, "eigenvalue table is not a cyclic group of order h0");
    return out;
}

/// The unique x ≡ seed (mod ℓ) with x^e = a (mod ℓ^N), by Newton iteration.
inline TruncatedPadic hensel_root(const TruncatedPadic& a, u64 e, u64 seed) {
    const u64 ell = a.ell;
    if (e == 0 || e % ell == 0) fail(ErrorCode::InvalidArgument, "Hensel lifting needs gcd(e, ell) = 1");
    seed %= ell;
    if (seed == 0 || powmod(seed, e, ell) != a.value % ell)
        throw Error(ErrorCode::NoRoot, "seed^" + std::to_string(e) + " is not congruent to a mod " + std::to_string(ell));
    const u64 mod = a.modulus();
    u64 x = seed;
    // Each step doubles the number of correct ℓ-adic digits.
    for (int digits = 1; digits < a.precision * 2; digits *= 2) {
        const u64 fx = (powmod(x, e, mod) + mod - a.value) % mod;
        if (fx == 0) break;
        const u64 dfx = mulmod(e % mod, powmod(x, e - 1, mod), mod);
        const u64 inv = *invmod(dfx, mod);
        x = (x + mod - mulmod(fx, inv, mod)) % mod;
    }
    if (powmod(x, e, mod) != a.value) fail(ErrorCode::NoRoot, "Newton iteration did not converge");
    return TruncatedPadic{x, ell, a.precision};
}

namespace detail {

// Roots of a polynomial over F_ℓ with multiplicities; the sum of
// multiplicities is less than the degree when the polynomial does not split.
inline std::vector<std::pair<u64, int>> roots_with_multiplicity(Poly f, u64 ell) {
    poly_trim(f);
    std::vector<std::pair<u64, int>> out;
    if (ell > 50'000'000) fail(ErrorCode::InvalidArgument, "root search limited to ell < 5e7");
    for (u64 x = 0; x < ell && f.size() > 1; ++x) {
        int mult = 0;
        while (f.size() > 1 && poly_eval(f, x, ell) == 0) {
            f = poly_divmod(f, Poly{(ell - x) % ell, 1}, ell).first;
            ++mult;
        }
        if (mult) out.emplace_back(x, mult);
    }
    return out;
}

inline Poly linear_power(u64 root, int k, u64 mod) {
    Poly out{1};
    for (int i = 0; i < k; ++i) out = poly_mul(out, Poly{(mod - root % mod) % mod, 1}, mod);
    return out;
}

} // namespace detail

/// Idempotent polynomial e_λ(T) in Z/ℓ^N[T]/(P), P the characteristic
/// polynomial of M; e_λ ≡ 1 on the λ̄ factor and 0 on the others.
inline Poly lambda_idempotent(const Matrix& M, u64 lam, u64 ell, int precision) {
    const u64 mod = TruncatedPadic::modulus_of(ell, precision);
    lam %= ell;
    const Poly P = charpoly(mat_reduce(M, mod), mod);
    Poly Pbar = P;
    for (auto& c : Pbar) c %= ell;
    const auto roots = detail::roots_with_multiplicity(Pbar, ell);
    std::size_t total = 0;
    int k = 0;
    for (auto [x, m] : roots) {
        total += static_cast<std::size_t>(m);
        if (x == lam) k = m;
    }
    if (total + 1 < Pbar.size())
        throw Error(ErrorCode::NotSplit, "characteristic polynomial does not split over F_" + std::to_string(ell));
    if (k == 0) return {};
    const Poly A = detail::linear_power(lam, k, ell);
    const Poly B = poly_divmod(Pbar, A, ell).first;
    auto [g, u, v] = poly_xgcd(A, B, ell);
    if (g != Poly{1}) fail(ErrorCode::IntegralityFailure, "eigenvalue factors are not coprime");
    Poly e = poly_divmod(poly_mul(v, B, ell), Pbar, ell).second;
    // Lift the idempotent: e ← 3e² − 2e³ converges ℓ-adically.
    for (int it = 0; it < 64; ++it) {
        const Poly e2 = poly_rem(poly_mul(e, e, mod), P, mod);
        const Poly e3 = poly_rem(poly_mul(e2, e, mod), P, mod);
        Poly next = poly_add(poly_scale(e2, 3, mod), poly_scale(e3, mod - 2, mod), mod);
        if (next == e) break;
        e = std::move(next);
    }
    return e;
}

/// Basis (as columns) of the generalized (λ)-eigenspace e_λ·(Z/ℓ^N)^n.
inline Matrix lambda_eigenspace(const Matrix& M, u64 lam, u64 ell, int precision) {
    const u64 mod = TruncatedPadic::modulus_of(ell, precision);
    const Poly e = lambda_idempotent(M, lam, ell, precision);
    if (e.empty()) return Matrix(M.rows, 0);
    const Matrix E = poly_eval_matrix(e, mat_reduce(M, mod), mod);
    // The image of an idempotent is free; columns independent mod ℓ form a basis.
    auto ech = fp::rref(mat_reduce(E, ell), ell);
    std::vector<Matrix> cols;
    for (auto c : ech.pivots) cols.push_back(E.column(c));
    return hconcat(cols);
}

struct EigenSummand {
    u64 lambda;
    Matrix basis;
};

inline std::vector<EigenSummand> lambda_decompose(const Matrix& M, u64 ell, int precision) {
    const u64 mod = TruncatedPadic::modulus_of(ell, precision);
    Poly Pbar = charpoly(mat_reduce(M, mod), mod);
    for (auto& c : Pbar) c %= ell;
    std::vector<EigenSummand> out;
    std::vector<Matrix> parts;
    for (auto [x, m] : detail::roots_with_multiplicity(Pbar, ell)) {
        out.push_back({x, lambda_eigenspace(M, x, ell, precision)});
        parts.push_back(out.back().basis);
    }
    std::size_t total = 0;
    for (const auto& s : out) total += s.basis.cols;
    if (total != M.rows)
        throw Error(ErrorCode::NotSplit, "characteristic polynomial does not split over F_" + std::to_string(ell));
    if (!parts.empty() && !fp::inverse(hconcat(parts), ell))
        fail(ErrorCode::IntegralityFailure, "eigenspaces do not form a direct sum");
    return out;
}

} // namespace coxbrauer
