#pragma once

// Exact arithmetic in Z[ζ_L], rational angles, and polynomials over Z[√p].

#include <coxbrauer/error.hpp>
#include <coxbrauer/modular.hpp>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace coxbrauer {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<i64>;

/// A rational angle a/b standing for exp(2πi·a/b), kept in [0, 1).
inline Rational angle_mod1(Rational a) {
    i64 n = a.numerator(), d = a.denominator();
    i64 r = n % d;
    if (r < 0) r += d;
    return Rational(r, d);
}

inline i64 angle_order(Rational a) { return angle_mod1(a).denominator(); }

namespace detail {

inline std::vector<i64> poly_divide_exact(std::vector<i64> num, const std::vector<i64>& den) {
    // Monic divisor; coefficients lowest degree first.
    const std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) return {0};
    std::vector<i64> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        i64 c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
    }
    return q;
}

} // namespace detail

namespace detail {

inline const std::vector<i64>& cyclotomic_unlocked(i64 n, std::map<i64, std::vector<i64>>& cache) {
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    std::vector<i64> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (i64 d = 1; d < n; ++d)
        if (n % d == 0) p = poly_divide_exact(p, cyclotomic_unlocked(d, cache));
    return cache.emplace(n, std::move(p)).first->second;
}

} // namespace detail

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
inline const std::vector<i64>& cyclotomic_polynomial(i64 n) {
    static std::map<i64, std::vector<i64>> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    return detail::cyclotomic_unlocked(n, cache);
}

/// Element of Z[ζ_L] stored in the redundant basis 1, ζ, …, ζ^{L−1}.
/// Equality is decided after reduction modulo Φ_L.
class Cyclotomic {
public:
    Cyclotomic() : Cyclotomic(1) {}
    explicit Cyclotomic(i64 level) : level_(level), c_(static_cast<std::size_t>(level), 0) {
        if (level < 1) fail(ErrorCode::InvalidArgument, "cyclotomic level must be positive");
    }

    static Cyclotomic integer(i64 v, i64 level) {
        Cyclotomic z(level);
        z.c_[0] = v;
        return z;
    }

    /// exp(2πi·angle); the angle's denominator must divide the level.
    static Cyclotomic root(Rational angle, i64 level) {
        angle = angle_mod1(angle);
        if (level % angle.denominator())
            fail(ErrorCode::InvalidArgument, "angle denominator does not divide level");
        Cyclotomic z(level);
        z.c_[static_cast<std::size_t>(angle.numerator() * (level / angle.denominator()))] = 1;
        return z;
    }

    static Cyclotomic zeta_power(i64 k, i64 level) {
        Cyclotomic z(level);
        z.c_[static_cast<std::size_t>(reduce(k, static_cast<u64>(level)))] = 1;
        return z;
    }

    i64 level() const { return level_; }
    const std::vector<i64>& coeffs() const { return c_; }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        check_level(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Cyclotomic& operator-=(const Cyclotomic& o) {
        check_level(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator-(Cyclotomic a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        a.check_level(b);
        Cyclotomic r(a.level_);
        const auto L = static_cast<std::size_t>(a.level_);
        for (std::size_t i = 0; i < L; ++i) {
            if (!a.c_[i]) continue;
            for (std::size_t j = 0; j < L; ++j) {
                if (!b.c_[j]) continue;
                r.c_[(i + j) % L] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    friend Cyclotomic operator*(i64 s, Cyclotomic a) {
        for (auto& x : a.c_) x *= s;
        return a;
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    Cyclotomic conj() const {
        Cyclotomic r(level_);
        const auto L = static_cast<std::size_t>(level_);
        for (std::size_t i = 0; i < L; ++i) r.c_[(L - i) % L] += c_[i];
        return r;
    }

    /// Re-express in Z[ζ_M] for a multiple M of the level.
    Cyclotomic embed(i64 new_level) const {
        if (new_level % level_) fail(ErrorCode::InvalidArgument, "embedding level must be a multiple");
        Cyclotomic r(new_level);
        const i64 step = new_level / level_;
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[static_cast<std::size_t>(static_cast<i64>(i) * step)] = c_[i];
        return r;
    }

    /// Coordinates on the power basis 1, ζ, …, ζ^{φ(L)−1}.
    std::vector<i64> reduced() const {
        const auto& phi = cyclotomic_polynomial(level_);
        std::vector<i64> r = c_;
        const std::size_t deg = phi.size() - 1;
        for (std::size_t i = r.size(); i-- > deg;) {
            i64 c = r[i];
            if (!c) continue;
            for (std::size_t k = 0; k <= deg; ++k) r[i - deg + k] -= c * phi[k];
        }
        r.resize(deg);
        return r;
    }

    bool is_zero() const {
        for (i64 x : reduced())
            if (x) return false;
        return true;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.level_ != b.level_) {
            const i64 L = std::lcm(a.level_, b.level_);
            return a.embed(L) == b.embed(L);
        }
        return (a - b).is_zero();
    }

    std::optional<i64> as_integer() const {
        auto r = reduced();
        for (std::size_t i = 1; i < r.size(); ++i)
            if (r[i]) return std::nullopt;
        return r.empty() ? 0 : r[0];
    }

private:
    void check_level(const Cyclotomic& o) const {
        if (o.level_ != level_) fail(ErrorCode::InvalidArgument, "cyclotomic level mismatch");
    }

    i64 level_;
    std::vector<i64> c_;
};

/// √p as an element of Z[ζ_L]; requires 8 | L for p = 2 and 12 | L for p = 3.
inline Cyclotomic sqrt_p_cyclotomic(int p, i64 level) {
    if (p == 2) return Cyclotomic::root(Rational(1, 8), level) + Cyclotomic::root(Rational(7, 8), level);
    if (p == 3) return Cyclotomic::root(Rational(1, 12), level) + Cyclotomic::root(Rational(11, 12), level);
    fail(ErrorCode::InvalidArgument, "sqrt(p) only provided for p = 2, 3");
}

/// Element a + b√p of Z[√p] (p = 0 means no radical is present).
struct QuadInt {
    BigInt a = 0;
    BigInt b = 0;
    int p = 0;

    friend QuadInt operator+(const QuadInt& x, const QuadInt& y) { return {x.a + y.a, x.b + y.b, std::max(x.p, y.p)}; }
    friend QuadInt operator-(const QuadInt& x, const QuadInt& y) { return {x.a - y.a, x.b - y.b, std::max(x.p, y.p)}; }
    friend QuadInt operator*(const QuadInt& x, const QuadInt& y) {
        const int p = std::max(x.p, y.p);
        return {x.a * y.a + x.b * y.b * p, x.a * y.b + x.b * y.a, p};
    }
    friend bool operator==(const QuadInt& x, const QuadInt& y) { return x.a == y.a && x.b == y.b; }

    QuadInt conj() const { return {a, -b, p}; }
    BigInt norm() const { return a * a - b * b * p; }
    bool is_integer() const { return b == 0; }

    /// Exact quotient x / y in Z[√p], if it exists.
    std::optional<QuadInt> divide(const QuadInt& y) const {
        BigInt n = y.norm();
        if (n == 0) return std::nullopt;
        QuadInt num = *this * y.conj();
        if (num.a % n != 0 || num.b % n != 0) return std::nullopt;
        return QuadInt{num.a / n, num.b / n, std::max(p, y.p)};
    }

    std::string str() const {
        std::ostringstream os;
        os << a;
        if (b != 0) os << (b > 0 ? " + " : " - ") << (b > 0 ? BigInt(b) : BigInt(-b)) << "*sqrt(" << p << ")";
        return os.str();
    }
};

/// Polynomial in q over Z[√p]; coefficient k multiplies q^k.
struct CycloPoly {
    std::vector<std::pair<i64, i64>> coeffs;
    int p = 0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    friend bool operator==(const CycloPoly&, const CycloPoly&) = default;

    /// Evaluate at q for ordinary types, or at q = √qsq for Suzuki/Ree types
    /// (qsq = p^{2m+1}, so q = p^m·√p).
    QuadInt evaluate(u64 q_or_qsq) const {
        QuadInt sum{0, 0, p};
        if (p == 0) {
            BigInt qpow = 1;
            for (const auto& [a, b] : coeffs) {
                sum.a += qpow * a;
                qpow *= q_or_qsq;
            }
            return sum;
        }
        auto pp = as_prime_power(q_or_qsq);
        if (!pp || pp->prime != static_cast<u64>(p) || pp->exponent % 2 == 0)
            fail(ErrorCode::InvalidArgument, "q^2 must be an odd power of " + std::to_string(p));
        const int m = (pp->exponent - 1) / 2;
        BigInt pm = 1;
        for (int i = 0; i < m; ++i) pm *= p;
        const QuadInt q{0, pm, p};
        QuadInt qpow{1, 0, p};
        for (const auto& [a, b] : coeffs) {
            sum = sum + QuadInt{a, b, p} * qpow;
            qpow = qpow * q;
        }
        return sum;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            auto [a, b] = coeffs[static_cast<std::size_t>(k)];
            if (a == 0 && b == 0) continue;
            std::string c;
            if (b == 0) {
                c = std::to_string(a);
            } else if (a == 0) {
                c = (b == 1 ? "" : b == -1 ? "-" : std::to_string(b) + "*") + std::string("sqrt(") + std::to_string(p) + ")";
            } else {
                c = "(" + std::to_string(a) + (b > 0 ? "+" : "-") + std::to_string(b > 0 ? b : -b) + "*sqrt(" + std::to_string(p) + "))";
            }
            std::string mono = k == 0 ? "" : k == 1 ? "q" : "q^" + std::to_string(k);
            std::string term;
            if (k == 0) term = c;
            else if (c == "1") term = mono;
            else if (c == "-1") term = "-" + mono;
            else term = c + "*" + mono;
            if (!first) {
                if (term[0] == '-') os << " - " << term.substr(1);
                else os << " + " << term;
            } else {
                os << term;
            }
            first = false;
        }
        return first ? "0" : os.str();
    }
};

} // namespace coxbrauer
