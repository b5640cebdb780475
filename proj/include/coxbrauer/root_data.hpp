#pragma once

// Coxeter data for (twisted) Cartan types: degrees, twist factors, Coxeter
// numbers, and the order polynomials of G and of the Coxeter torus.

#include <coxbrauer/cyclotomic.hpp>
#include <coxbrauer/error.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace coxbrauer {

enum class Family { A, B, C, D, E6, E7, E8, F4, G2, A2, B2Suzuki, D2, D3, E62, F4Ree, G2Ree };

inline constexpr std::array<std::pair<Family, std::string_view>, 16> family_names{{
    {Family::A, "A"},
    {Family::B, "B"},
    {Family::C, "C"},
    {Family::D, "D"},
    {Family::E6, "E6"},
    {Family::E7, "E7"},
    {Family::E8, "E8"},
    {Family::F4, "F4"},
    {Family::G2, "G2"},
    {Family::A2, "2A"},
    {Family::B2Suzuki, "2B2"},
    {Family::D2, "2D"},
    {Family::D3, "3D4"},
    {Family::E62, "2E6"},
    {Family::F4Ree, "2F4"},
    {Family::G2Ree, "2G2"},
}};

inline std::string_view family_name(Family f) {
    for (const auto& [fam, name] : family_names)
        if (fam == f) return name;
    return "?";
}

/// Rank forced by the family, or 0 for the infinite series.
inline int fixed_rank(Family f) {
    switch (f) {
    case Family::E6: case Family::E62: return 6;
    case Family::E7: return 7;
    case Family::E8: return 8;
    case Family::F4: case Family::F4Ree: case Family::D3: return 4;
    case Family::G2: case Family::G2Ree: case Family::B2Suzuki: return 2;
    default: return 0;
    }
}

inline int minimal_rank(Family f) {
    switch (f) {
    case Family::A: return 1;
    case Family::B: case Family::C: case Family::A2: return 2;
    case Family::D: case Family::D2: return 4;
    default: return fixed_rank(f);
    }
}

struct TwistedType {
    Family family = Family::A;
    int rank = 1;

    friend bool operator==(const TwistedType&, const TwistedType&) = default;

    std::string name() const {
        std::string n(family_name(family));
        if (!fixed_rank(family)) n += std::to_string(rank);
        return n;
    }
};

/// Parses a family name ("A", "2D", "E8", ...) with a rank; rank 0 means
/// "use the family's fixed rank". Names with the rank baked in ("A2", "D4")
/// are accepted when rank is 0.
inline TwistedType parse_type(std::string name, int rank = 0) {
    if (name == "2g2" || name == "2b2" || name == "2f4" || name == "2e6" || name == "3d4")
        std::transform(name.begin(), name.end(), name.begin(), ::toupper);
    for (const auto& [fam, fname] : family_names) {
        if (name == fname) {
            int fixed = fixed_rank(fam);
            if (fixed) {
                if (rank != 0 && rank != fixed)
                    fail(ErrorCode::UnsupportedType, name + " has rank " + std::to_string(fixed));
                return {fam, fixed};
            }
            if (rank < minimal_rank(fam))
                fail(ErrorCode::UnsupportedType, name + " needs rank >= " + std::to_string(minimal_rank(fam)));
            return {fam, rank};
        }
    }
    // "A2", "2D5", ...: split trailing digits off an infinite-series name.
    std::size_t cut = name.size();
    while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
    if (rank == 0 && cut < name.size() && cut > 0) {
        const std::string head = name.substr(0, cut);
        for (const auto& [fam, fname] : family_names)
            if (head == fname && !fixed_rank(fam)) return parse_type(head, std::stoi(name.substr(cut)));
    }
    fail(ErrorCode::UnsupportedType, "unsupported type '" + name + "'");
}

struct CoxeterDatum {
    TwistedType type;
    int m = 0;
    std::vector<int> degrees;
    std::vector<Rational> epsilons;
    int h = 0;
    int delta = 1;
    int h0 = 0;
    int r = 0;
    int N = 0;

    /// 2 or 3 for Suzuki/Ree types (where q is an odd power of √p), else 0.
    int radical_prime() const {
        switch (type.family) {
        case Family::B2Suzuki: case Family::F4Ree: return 2;
        case Family::G2Ree: return 3;
        default: return 0;
        }
    }

    bool suzuki_ree() const { return radical_prime() != 0; }
};

namespace detail {

inline Rational half() { return Rational(1, 2); }

// Classical degree and twist tables (imported data, not derived here).
inline void fill_degrees(TwistedType t, std::vector<int>& d, std::vector<Rational>& e) {
    const int n = t.rank;
    d.clear();
    e.clear();
    auto put = [&](int deg, Rational eps = Rational(0)) {
        d.push_back(deg);
        e.push_back(eps);
    };
    switch (t.family) {
    case Family::A:
        for (int k = 2; k <= n + 1; ++k) put(k);
        break;
    case Family::A2:
        for (int k = 2; k <= n + 1; ++k) put(k, k % 2 ? half() : Rational(0));
        break;
    case Family::B: case Family::C:
        for (int k = 1; k <= n; ++k) put(2 * k);
        break;
    case Family::D:
        for (int k = 1; k < n; ++k) put(2 * k);
        put(n);
        break;
    case Family::D2:
        for (int k = 1; k < n; ++k) put(2 * k);
        put(n, half());
        break;
    case Family::D3:
        put(2);
        put(4, Rational(1, 3));
        put(4, Rational(2, 3));
        put(6);
        break;
    case Family::E6:
        for (int k : {2, 5, 6, 8, 9, 12}) put(k);
        break;
    case Family::E62:
        for (int k : {2, 5, 6, 8, 9, 12}) put(k, k % 2 ? half() : Rational(0));
        break;
    case Family::E7:
        for (int k : {2, 6, 8, 10, 12, 14, 18}) put(k);
        break;
    case Family::E8:
        for (int k : {2, 8, 12, 14, 18, 20, 24, 30}) put(k);
        break;
    case Family::F4:
        for (int k : {2, 6, 8, 12}) put(k);
        break;
    case Family::G2:
        put(2);
        put(6);
        break;
    case Family::B2Suzuki:
        put(2);
        put(4, half());
        break;
    case Family::G2Ree:
        put(2);
        put(6, half());
        break;
    case Family::F4Ree:
        put(2);
        put(6, half());
        put(8);
        put(12, half());
        break;
    }
}

inline int twist_order(Family f) {
    switch (f) {
    case Family::A2: case Family::D2: case Family::E62:
    case Family::B2Suzuki: case Family::F4Ree: case Family::G2Ree: return 2;
    case Family::D3: return 3;
    default: return 1;
    }
}

// Number of orbits of the twist on the simple roots.
inline int orbit_count(TwistedType t) {
    switch (t.family) {
    case Family::A2: return (t.rank + 1) / 2;
    case Family::D2: return t.rank - 1;
    case Family::D3: return 2;
    case Family::E62: return 4;
    case Family::B2Suzuki: case Family::G2Ree: return 1;
    case Family::F4Ree: return 2;
    default: return t.rank;
    }
}

} // namespace detail

/// a(d) = #{j : ε_j = exp(2πi·d_j/d)}.
inline int a_function(const std::vector<int>& degrees, const std::vector<Rational>& eps, i64 d) {
    if (d < 1) fail(ErrorCode::InvalidArgument, "a(d) needs d >= 1");
    int count = 0;
    for (std::size_t j = 0; j < degrees.size(); ++j)
        if (angle_mod1(Rational(degrees[j], d)) == angle_mod1(eps[j])) ++count;
    return count;
}

inline int a_function(const CoxeterDatum& datum, i64 d) { return a_function(datum.degrees, datum.epsilons, d); }

namespace detail {

// Every d with a(d) > 0 satisfies d ≤ d_j·(denominator of ε_j).
inline i64 a_support_bound(const std::vector<int>& degrees, const std::vector<Rational>& eps) {
    i64 bound = 1;
    for (std::size_t j = 0; j < degrees.size(); ++j)
        bound = std::max<i64>(bound, static_cast<i64>(degrees[j]) * eps[j].denominator());
    return bound;
}

} // namespace detail

/// Largest d with a(d) > 0.
inline int coxeter_number_from_degrees(const std::vector<int>& degrees, const std::vector<Rational>& eps) {
    for (i64 d = detail::a_support_bound(degrees, eps); d >= 1; --d)
        if (a_function(degrees, eps, d) > 0) return static_cast<int>(d);
    return 0;
}

/// Closed-form Coxeter numbers (h, h0) by family, used to cross-check the degree tables.
inline std::pair<int, int> coxeter_numbers_closed_form(TwistedType t) {
    const int n = t.rank;
    switch (t.family) {
    case Family::A: return {n + 1, n + 1};
    case Family::B: case Family::C: return {2 * n, 2 * n};
    case Family::D: return {2 * n - 2, 2 * n - 2};
    case Family::E6: return {12, 12};
    case Family::E7: return {18, 18};
    case Family::E8: return {30, 30};
    case Family::F4: return {12, 12};
    case Family::G2: return {6, 6};
    case Family::A2: {
        // 2A_{2k} and 2A_{2k+1} both have h = 4k + 2.
        const int k = n / 2;
        return {4 * k + 2, 2 * k + 1};
    }
    case Family::D2: return {2 * n, n};
    case Family::D3: return {12, 4};
    case Family::E62: return {18, 9};
    case Family::B2Suzuki: return {8, 4};
    case Family::F4Ree: return {24, 12};
    case Family::G2Ree: return {12, 6};
    }
    return {0, 0};
}

/// Builds a datum from explicit degree data; h is recomputed from a(d).
inline CoxeterDatum make_datum(TwistedType t, std::vector<int> degrees, std::vector<Rational> eps) {
    CoxeterDatum c;
    c.type = t;
    c.m = static_cast<int>(degrees.size());
    c.degrees = std::move(degrees);
    c.epsilons = std::move(eps);
    for (auto& e : c.epsilons) e = angle_mod1(e);
    c.h = coxeter_number_from_degrees(c.degrees, c.epsilons);
    c.delta = detail::twist_order(t.family);
    if (c.h % c.delta) fail(ErrorCode::IntegralityFailure, "h not divisible by delta for " + t.name());
    c.h0 = c.h / c.delta;
    c.r = detail::orbit_count(t);
    c.N = 0;
    for (int d : c.degrees) c.N += d - 1;
    return c;
}

inline CoxeterDatum coxeter_datum(TwistedType t) {
    const int fixed = fixed_rank(t.family);
    if ((fixed && t.rank != fixed) || t.rank < minimal_rank(t.family))
        fail(ErrorCode::UnsupportedType, "rank " + std::to_string(t.rank) + " invalid for " + std::string(family_name(t.family)));
    std::vector<int> d;
    std::vector<Rational> e;
    detail::fill_degrees(t, d, e);
    return make_datum(t, std::move(d), std::move(e));
}

/// Representative types covering every family, used by table checks.
inline std::vector<TwistedType> builtin_types(int max_rank = 8) {
    std::vector<TwistedType> out;
    for (const auto& [fam, name] : family_names) {
        if (int fixed = fixed_rank(fam)) {
            out.push_back({fam, fixed});
            continue;
        }
        for (int n = minimal_rank(fam); n <= max_rank; ++n) out.push_back({fam, n});
    }
    return out;
}

/// FNV-1a fingerprint of degree/twist tables; pinned in the table self-check.
inline std::uint64_t table_fingerprint(const std::vector<CoxeterDatum>& data) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](i64 v) {
        for (int k = 0; k < 8; ++k) {
            h ^= static_cast<std::uint64_t>((v >> (8 * k)) & 0xff);
            h *= 1099511628211ULL;
        }
    };
    for (const auto& c : data) {
        mix(static_cast<i64>(c.type.family));
        mix(c.type.rank);
        for (std::size_t j = 0; j < c.degrees.size(); ++j) {
            mix(c.degrees[j]);
            mix(c.epsilons[j].numerator());
            mix(c.epsilons[j].denominator());
        }
    }
    return h;
}

inline constexpr std::uint64_t builtin_table_fingerprint = 0x8019be45cf2dceb4ULL;

struct TableCheck {
    bool fingerprint_ok = false;
    std::vector<std::string> failures;
    bool ok() const { return fingerprint_ok && failures.empty(); }
};

/// Checks a (possibly altered) table against the closed-form h/h0 values and
/// the structural invariants.
inline TableCheck check_tables(const std::vector<CoxeterDatum>& data) {
    TableCheck out;
    out.fingerprint_ok = table_fingerprint(data) == builtin_table_fingerprint;
    for (const auto& c : data) {
        const auto name = c.type.name();
        const int h = coxeter_number_from_degrees(c.degrees, c.epsilons);
        const auto [h_ref, h0_ref] = coxeter_numbers_closed_form(c.type);
        if (h != h_ref || h != c.h) out.failures.push_back(name + ": h mismatch");
        if (h_ref / detail::twist_order(c.type.family) != h0_ref || c.h0 != h0_ref) out.failures.push_back(name + ": h0 mismatch");
        if (c.h0 * c.delta != c.h) out.failures.push_back(name + ": h0*delta != h");
        if (a_function(c, c.h) != 1) out.failures.push_back(name + ": a(h) != 1");
        int n = 0;
        for (int d : c.degrees) n += d - 1;
        if (n != c.N) out.failures.push_back(name + ": N mismatch");
    }
    if (!out.fingerprint_ok) out.failures.push_back("table fingerprint mismatch");
    return out;
}

inline std::vector<CoxeterDatum> builtin_table() {
    std::vector<CoxeterDatum> out;
    for (auto t : builtin_types()) out.push_back(coxeter_datum(t));
    return out;
}

/// Angles of the eigenvalues ε_j^{-1}·exp(2πi(d_j−1)/h) of cσ.
inline std::vector<Rational> csigma_eigenvalues(const CoxeterDatum& c) {
    std::vector<Rational> out;
    for (std::size_t j = 0; j < c.degrees.size(); ++j)
        out.push_back(angle_mod1(Rational(c.degrees[j] - 1, c.h) - c.epsilons[j]));
    return out;
}

/// |W^F| = ∏_{ε_j = 1} d_j.
inline BigInt weyl_fixed_order(const CoxeterDatum& c) {
    BigInt w = 1;
    for (std::size_t j = 0; j < c.degrees.size(); ++j)
        if (c.epsilons[j] == Rational(0)) w *= c.degrees[j];
    return w;
}

namespace detail {

inline i64 cyclotomic_level(const CoxeterDatum& c) {
    i64 L = c.h;
    for (const auto& e : c.epsilons) L = std::lcm(L, e.denominator());
    if (c.radical_prime() == 2) L = std::lcm<i64>(L, 8);
    if (c.radical_prime() == 3) L = std::lcm<i64>(L, 12);
    return L;
}

// Expands ∏ (q^{k_j} − u_j) with u_j roots of unity, coefficients in Z[ζ_L].
inline std::vector<Cyclotomic> expand_product(const std::vector<std::pair<int, Rational>>& factors, i64 L) {
    std::vector<Cyclotomic> poly{Cyclotomic::integer(1, L)};
    for (const auto& [k, angle] : factors) {
        std::vector<Cyclotomic> next(poly.size() + static_cast<std::size_t>(k), Cyclotomic(L));
        const Cyclotomic u = Cyclotomic::root(angle, L);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + static_cast<std::size_t>(k)] += poly[i];
            next[i] -= u * poly[i];
        }
        poly = std::move(next);
    }
    return poly;
}

inline CycloPoly to_quadratic(const std::vector<Cyclotomic>& poly, int p, i64 L) {
    CycloPoly out;
    out.p = p;
    const Cyclotomic root_p = p ? sqrt_p_cyclotomic(p, L) : Cyclotomic::integer(0, L);
    const auto s = root_p.reduced();
    std::size_t pivot = 0;
    if (p)
        for (std::size_t k = 1; k < s.size(); ++k)
            if (s[k]) {
                pivot = k;
                break;
            }
    for (const auto& c : poly) {
        auto v = c.reduced();
        i64 b = 0;
        if (p && v[pivot] % s[pivot] == 0) b = v[pivot] / s[pivot];
        const Cyclotomic rest = c - b * root_p;
        auto a = rest.as_integer();
        if (!a) fail(ErrorCode::IntegralityFailure, "order polynomial coefficient is not in Z[sqrt(p)]");
        out.coeffs.emplace_back(*a, b);
    }
    while (out.coeffs.size() > 1 && out.coeffs.back() == std::pair<i64, i64>{0, 0}) out.coeffs.pop_back();
    return out;
}

} // namespace detail

/// |G| = q^N ∏ (q^{d_j} − ε_j^{-1}).
inline CycloPoly group_order_poly(const CoxeterDatum& c) {
    const i64 L = detail::cyclotomic_level(c);
    std::vector<std::pair<int, Rational>> factors;
    for (std::size_t j = 0; j < c.degrees.size(); ++j) factors.emplace_back(c.degrees[j], angle_mod1(-c.epsilons[j]));
    auto poly = detail::expand_product(factors, L);
    poly.insert(poly.begin(), static_cast<std::size_t>(c.N), Cyclotomic(L));
    return detail::to_quadratic(poly, c.radical_prime(), L);
}

/// |T_c| as the monic polynomial det(q − cσ) = ∏ (q − μ_j).
inline CycloPoly torus_order_poly(const CoxeterDatum& c) {
    const i64 L = detail::cyclotomic_level(c);
    std::vector<std::pair<int, Rational>> factors;
    for (const auto& mu : csigma_eigenvalues(c)) factors.emplace_back(1, mu);
    return detail::to_quadratic(detail::expand_product(factors, L), c.radical_prime(), L);
}

/// Euler totient, used by the degree-sum identity Σ_d a(d)φ(d) = Σ d_j.
inline i64 euler_phi(i64 n) {
    i64 result = n;
    for (u64 p : prime_factors(static_cast<u64>(n))) result -= result / static_cast<i64>(p);
    return result;
}

inline i64 degree_sum_via_a(const CoxeterDatum& c) {
    i64 s = 0;
    const i64 bound = detail::a_support_bound(c.degrees, c.epsilons);
    for (i64 d = 1; d <= bound; ++d) s += a_function(c, d) * euler_phi(d);
    return s;
}

} // namespace coxbrauer
