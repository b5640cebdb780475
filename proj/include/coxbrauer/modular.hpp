#pragma once

// Integer and prime-field helpers shared by the arithmetic modules.

#include <coxbrauer/error.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace coxbrauer {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Canonical representative of a in [0, m).
inline u64 reduce(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline std::optional<u64> invmod(u64 a, u64 m) {
    i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
    i64 old_s = 1, s = 0;
    while (r != 0) {
        i64 q = old_r / r;
        std::swap(old_r, r);
        r -= q * old_r;
        std::swap(old_s, s);
        s -= q * old_s;
    }
    if (old_r != 1 && !(m == 1)) return std::nullopt;
    return reduce(old_s, m);
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

struct PrimePower {
    u64 prime;
    int exponent;
};

/// Returns (p, k) with n = p^k, or nullopt when n is not a prime power.
inline std::optional<PrimePower> as_prime_power(u64 n) {
    if (n < 2) return std::nullopt;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        if (n != 1) return std::nullopt;
        return PrimePower{p, k};
    }
    return PrimePower{n, 1};
}

inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Multiplicative order of a modulo m (gcd(a, m) must be 1).
inline u64 multiplicative_order(u64 a, u64 m) {
    a %= m;
    if (std::gcd(a, m) != 1) fail(ErrorCode::InvalidArgument, "element is not a unit");
    u64 phi = m;
    for (u64 p : prime_factors(m)) phi = phi / p * (p - 1);
    u64 ord = phi;
    for (u64 p : prime_factors(phi)) {
        while (ord % p == 0 && powmod(a, ord / p, m) == 1) ord /= p;
    }
    return ord;
}

inline int valuation(u64 n, u64 p) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline bool is_square_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0 || p == 2) return true;
    return powmod(a, (p - 1) / 2, p) == 1;
}

/// Square root of a modulo an odd prime p (Tonelli-Shanks); returns the smaller root.
inline std::optional<u64> sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (!is_square_mod(a, p)) return std::nullopt;
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (is_square_mod(z, p)) ++z;
    u64 m = static_cast<u64>(s);
    u64 c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 k = 0; k + i + 1 < m; ++k) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return std::min(r, p - r);
}

inline u64 smallest_nonresidue(u64 p) {
    for (u64 s = 2; s < p; ++s)
        if (!is_square_mod(s, p)) return s;
    fail(ErrorCode::InvalidArgument, "no quadratic non-residue");
}

/// Element a + b·t of F_p[t]/(t² − s), s the smallest non-residue mod p.
struct Fp2 {
    u64 a = 0;
    u64 b = 0;
    u64 p = 0;
    u64 s = 0;

    static Fp2 base(u64 x, u64 p) { return Fp2{x % p, 0, p, p == 2 ? 1 : smallest_nonresidue(p)}; }

    bool in_prime_field() const { return b == 0; }

    friend Fp2 operator*(const Fp2& x, const Fp2& y) {
        const u64 p = x.p;
        u64 a = (mulmod(x.a, y.a, p) + mulmod(mulmod(x.b, y.b, p), x.s, p)) % p;
        u64 b = (mulmod(x.a, y.b, p) + mulmod(x.b, y.a, p)) % p;
        return Fp2{a, b, p, x.s};
    }

    friend bool operator==(const Fp2& x, const Fp2& y) { return x.a == y.a && x.b == y.b && x.p == y.p; }

    Fp2 pow(u64 e) const {
        Fp2 result{1 % p, 0, p, s};
        Fp2 acc = *this;
        while (e) {
            if (e & 1) result = result * acc;
            acc = acc * acc;
            e >>= 1;
        }
        return result;
    }

    bool is_one() const { return a == 1 % p && b == 0; }

    /// Lexicographic order on (a, b) coordinates.
    bool lex_less(const Fp2& o) const { return a != o.a ? a < o.a : b < o.b; }
};

/// Both square roots of x in F_p or F_{p²}; the lexicographically smaller first.
inline std::pair<Fp2, Fp2> sqrt_fp2(u64 x, u64 p) {
    Fp2 one = Fp2::base(1, p);
    x %= p;
    Fp2 r = one;
    if (auto root = sqrt_mod(x, p)) {
        r.a = *root;
        r.b = 0;
    } else {
        // x / s is a residue; sqrt(x) = t · sqrt(x / s).
        u64 ratio = mulmod(x, *invmod(one.s, p), p);
        r.a = 0;
        r.b = *sqrt_mod(ratio, p);
    }
    Fp2 neg{(p - r.a) % p, (p - r.b) % p, p, one.s};
    return r.lex_less(neg) ? std::pair{r, neg} : std::pair{neg, r};
}

/// Multiplicative order of a nonzero element of F_{p²}.
inline u64 order_fp2(const Fp2& x) {
    const u64 group = x.p * x.p - 1;
    u64 ord = group;
    for (u64 q : prime_factors(group)) {
        while (ord % q == 0 && x.pow(ord / q).is_one()) ord /= q;
    }
    return ord;
}

/// Element of Z/ℓ^N stored by canonical representative.
struct TruncatedPadic {
    u64 value = 0;
    u64 ell = 2;
    int precision = 1;

    static u64 modulus_of(u64 ell, int precision) {
        unsigned __int128 m = 1;
        for (int i = 0; i < precision; ++i) {
            m *= ell;
            if (m >> 62) fail(ErrorCode::InvalidArgument, "ell^N exceeds 62 bits");
        }
        return static_cast<u64>(m);
    }

    static TruncatedPadic make(i64 v, u64 ell, int precision) {
        if (precision < 1) fail(ErrorCode::InvalidArgument, "precision must be >= 1");
        return TruncatedPadic{reduce(v, modulus_of(ell, precision)), ell, precision};
    }

    u64 modulus() const { return modulus_of(ell, precision); }

    TruncatedPadic truncated(int lower) const {
        if (lower > precision) fail(ErrorCode::InvalidArgument, "cannot raise precision by truncation");
        return TruncatedPadic{value % modulus_of(ell, lower), ell, lower};
    }

    u64 residue() const { return value % ell; }

    friend bool operator==(const TruncatedPadic&, const TruncatedPadic&) = default;
};

} // namespace coxbrauer
