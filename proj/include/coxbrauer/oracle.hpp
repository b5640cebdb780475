#pragma once

// Brute-force character theory and group algebra of the metacyclic groups
// D⋊E, used to cross-check the star tree and its algebra.

#include <coxbrauer/brauer_tree.hpp>
#include <coxbrauer/cyclotomic.hpp>
#include <coxbrauer/error.hpp>
#include <coxbrauer/linalg.hpp>
#include <coxbrauer/modular.hpp>
#include <coxbrauer/tree_algebra.hpp>

#include <string>
#include <vector>

namespace coxbrauer {

/// H = ⟨y⟩ ⋊ ⟨x⟩ with |y| = d_order = ℓ^α, |x| = e_order and x·y·x^{-1} = y^n.
/// Element x^k·y^b is encoded as k·d_order + b.
struct MetacyclicGroup {
    u64 d_order = 0;
    int e_order = 0;
    u64 n = 0;
    u64 ell = 0;
    int alpha = 0;

    static MetacyclicGroup make(u64 d_order, int e_order, u64 n) {
        auto pp = as_prime_power(d_order);
        if (!pp) fail(ErrorCode::InvalidArgument, "|D| must be a prime power");
        if (e_order < 1 || static_cast<u64>(e_order) % pp->prime == 0) fail(ErrorCode::InvalidArgument, "|E| must be prime to ell");
        MetacyclicGroup G{d_order, e_order, n % d_order, pp->prime, pp->exponent};
        if (std::gcd(G.n, d_order) != 1 || powmod(G.n, static_cast<u64>(e_order), d_order) != 1)
            throw Error(ErrorCode::BadAction, "n^|E| must be 1 modulo |D|");
        if (multiplicative_order(G.n % G.ell, G.ell) != static_cast<u64>(e_order))
            throw Error(ErrorCode::BadAction, "n must have order |E| modulo ell");
        return G;
    }

    std::size_t order() const { return static_cast<std::size_t>(d_order) * static_cast<std::size_t>(e_order); }
    int k_of(std::size_t g) const { return static_cast<int>(g / d_order); }
    u64 b_of(std::size_t g) const { return g % d_order; }
    std::size_t element(int k, u64 b) const {
        return static_cast<std::size_t>(reduce(k, static_cast<u64>(e_order))) * d_order + b % d_order;
    }

    /// (x^k y^b)(x^k' y^b') = x^{k+k'} y^{b·n^{-k'} + b'}.
    std::size_t mul(std::size_t g, std::size_t h) const {
        const u64 nu = *invmod(n, d_order);
        const u64 twist = powmod(nu, static_cast<u64>(k_of(h)), d_order);
        return element(k_of(g) + k_of(h), (mulmod(b_of(g), twist, d_order) + b_of(h)) % d_order);
    }
};

struct ConjugacyClass {
    std::size_t representative = 0;
    std::size_t size = 0;
};

struct CharacterTable {
    i64 level = 1;
    std::vector<ConjugacyClass> classes;
    std::vector<std::string> names;
    std::vector<std::vector<Cyclotomic>> values; // [character][class]
    int linear_count = 0;
    std::vector<u64> orbit_representatives; // a for Ind θ_a
};

inline std::vector<ConjugacyClass> conjugacy_classes(const MetacyclicGroup& G) {
    const std::size_t N = G.order();
    std::vector<std::size_t> inv(N);
    for (std::size_t g = 0; g < N; ++g)
        for (std::size_t h = 0; h < N; ++h)
            if (G.mul(g, h) == 0) inv[g] = h;
    std::vector<int> seen(N, 0);
    std::vector<ConjugacyClass> out;
    for (std::size_t g = 0; g < N; ++g) {
        if (seen[g]) continue;
        ConjugacyClass c{g, 0};
        for (std::size_t h = 0; h < N; ++h) {
            const std::size_t conj = G.mul(G.mul(h, g), inv[h]);
            if (!seen[conj]) {
                seen[conj] = 1;
                ++c.size;
            }
        }
        out.push_back(c);
    }
    return out;
}

namespace detail {

inline Cyclotomic character_value(const MetacyclicGroup& G, const CharacterTable& T, std::size_t chi, std::size_t g) {
    const int k = G.k_of(g);
    const u64 b = G.b_of(g);
    const i64 L = T.level;
    if (chi < static_cast<std::size_t>(T.linear_count))
        return Cyclotomic::zeta_power(static_cast<i64>(chi) * k * (L / G.e_order), L);
    if (k != 0) return Cyclotomic(L);
    const u64 a = T.orbit_representatives[chi - static_cast<std::size_t>(T.linear_count)];
    Cyclotomic v(L);
    u64 t = a;
    for (int i = 0; i < G.e_order; ++i) {
        v += Cyclotomic::zeta_power(static_cast<i64>(mulmod(t, b, G.d_order)) * (L / static_cast<i64>(G.d_order)), L);
        t = mulmod(t, G.n, G.d_order);
    }
    return v;
}

} // namespace detail

/// Linear characters λ_t(x^k y^b) = ε^{tk} (ε = exp(2πi/|E|)) and the
/// induced characters Ind_D^H θ_a over orbit representatives a of n on
/// (ℤ/|D|) \ {0}. Both orthogonality relations are checked exactly.
inline CharacterTable character_table(const MetacyclicGroup& G) {
    CharacterTable T;
    T.level = static_cast<i64>(G.d_order) * G.e_order;
    T.classes = conjugacy_classes(G);
    T.linear_count = G.e_order;
    for (int t = 0; t < G.e_order; ++t) T.names.push_back("lambda" + std::to_string(t));
    std::vector<bool> hit(G.d_order, false);
    for (u64 a = 1; a < G.d_order; ++a) {
        if (hit[a]) continue;
        T.orbit_representatives.push_back(a);
        T.names.push_back("Ind(theta" + std::to_string(a) + ")");
        u64 t = a;
        for (int i = 0; i < G.e_order; ++i) {
            hit[t] = true;
            t = mulmod(t, G.n, G.d_order);
        }
    }
    const std::size_t nchar = T.names.size();
    if (nchar != T.classes.size())
        fail(ErrorCode::IntegralityFailure, std::to_string(nchar) + " characters but " + std::to_string(T.classes.size()) + " classes");
    T.values.assign(nchar, {});
    for (std::size_t c = 0; c < nchar; ++c)
        for (const auto& cl : T.classes) T.values[c].push_back(detail::character_value(G, T, c, cl.representative));

    const i64 order = static_cast<i64>(G.order());
    for (std::size_t a = 0; a < nchar; ++a)
        for (std::size_t b = a; b < nchar; ++b) {
            Cyclotomic s(T.level);
            for (std::size_t c = 0; c < T.classes.size(); ++c)
                s += static_cast<i64>(T.classes[c].size) * (T.values[a][c] * T.values[b][c].conj());
            if (!(s == Cyclotomic::integer(a == b ? order : 0, T.level)))
                fail(ErrorCode::IntegralityFailure, "row orthogonality fails for " + T.names[a] + ", " + T.names[b]);
        }
    for (std::size_t c = 0; c < T.classes.size(); ++c)
        for (std::size_t c2 = c; c2 < T.classes.size(); ++c2) {
            Cyclotomic s(T.level);
            for (std::size_t a = 0; a < nchar; ++a) s += T.values[a][c] * T.values[a][c2].conj();
            const i64 expect = c == c2 ? order / static_cast<i64>(T.classes[c].size) : 0;
            if (!(s == Cyclotomic::integer(expect, T.level))) fail(ErrorCode::IntegralityFailure, "column orthogonality fails");
        }
    return T;
}

/// The |E|-th root of unity mod ℓ matched with ε = exp(2πi/|E|): g^{(ℓ−1)/|E|}
/// for the least primitive root g.
inline u64 brauer_lift_base(const MetacyclicGroup& G) {
    const u64 l = G.ell;
    for (u64 g = 2; g < l; ++g)
        if (multiplicative_order(g, l) == l - 1) return powmod(g, (l - 1) / static_cast<u64>(G.e_order), l);
    return 1 % l; // ℓ = 2 forces |E| = 1
}

/// Numbering exponent s with ζ ≡ w^s (mod ℓ), w = brauer_lift_base(G).
inline int eta_shift(const MetacyclicGroup& G, u64 zeta) {
    const u64 w = brauer_lift_base(G);
    u64 acc = 1 % G.ell;
    for (int s = 0; s < G.e_order; ++s) {
        if (acc == zeta % G.ell) return s;
        acc = mulmod(acc, w, G.ell);
    }
    fail(ErrorCode::InvalidArgument, "zeta is not an |E|-th root of unity modulo ell");
}

/// Decomposition matrix from the character table, rows η_0..η_{m−1} then the
/// induced characters, columns S_0..S_{m−1}, with η_j(x) = ζ^j for the given
/// ζ (mod ℓ). Multiplicities are found via the orthogonality of the Brauer
/// characters of E and then checked to reconstruct the restriction.
inline DecompositionMatrix brute_decomposition_matrix(const MetacyclicGroup& G, u64 zeta) {
    const auto T = character_table(G);
    const int m = G.e_order;
    const i64 L = T.level;
    // ℓ-regular classes are those of x^k.
    std::vector<std::size_t> reg(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const std::size_t g = G.element(k, 0);
        bool found = false;
        for (std::size_t c = 0; c < T.classes.size() && !found; ++c) {
            auto cls = T.classes[c];
            // x^k is its own class representative candidate when the class contains it.
            if (cls.representative == g) {
                reg[static_cast<std::size_t>(k)] = c;
                found = true;
            }
        }
        if (!found) fail(ErrorCode::SingularSystem, "x^" + std::to_string(k) + " is not a class representative");
    }
    auto phi = [&](int u, int k) { return Cyclotomic::zeta_power(static_cast<i64>(u) * k * (L / m), L); };
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) {
            Cyclotomic s(L);
            for (int k = 0; k < m; ++k) s += phi(u, k) * phi(v, k).conj();
            if (!(s == Cyclotomic::integer(u == v ? m : 0, L))) throw Error(ErrorCode::SingularSystem, "Brauer character matrix is singular");
        }
    const int s = eta_shift(G, zeta);
    DecompositionMatrix D;
    D.h0 = m;
    D.multiplicity = static_cast<int>(T.names.size()) - m;
    auto solve_row = [&](std::size_t chi) {
        std::vector<int> row(static_cast<std::size_t>(m), 0);
        Cyclotomic check(L);
        std::vector<i64> oracle_coeffs(static_cast<std::size_t>(m), 0);
        for (int u = 0; u < m; ++u) {
            Cyclotomic acc(L);
            for (int k = 0; k < m; ++k) acc += T.values[chi][reg[static_cast<std::size_t>(k)]] * phi(u, k).conj();
            auto v = acc.as_integer();
            if (!v || *v % m != 0 || *v < 0) throw Error(ErrorCode::SingularSystem, "non-integral decomposition number for " + T.names[chi]);
            oracle_coeffs[static_cast<std::size_t>(u)] = *v / m;
        }
        for (int k = 0; k < m; ++k) {
            Cyclotomic rebuilt(L);
            for (int u = 0; u < m; ++u) rebuilt += oracle_coeffs[static_cast<std::size_t>(u)] * phi(u, k);
            if (!(rebuilt == T.values[chi][reg[static_cast<std::size_t>(k)]]))
                throw Error(ErrorCode::SingularSystem, "restriction of " + T.names[chi] + " is not a combination of Brauer characters");
        }
        // Column S_j is the Brauer character φ_{s·j}.
        for (int j = 0; j < m; ++j) row[static_cast<std::size_t>(j)] = static_cast<int>(oracle_coeffs[static_cast<std::size_t>(reduce(static_cast<i64>(s) * j, static_cast<u64>(m)))]);
        return row;
    };
    for (int j = 0; j < m; ++j) D.rows.push_back(solve_row(static_cast<std::size_t>(reduce(static_cast<i64>(s) * j, static_cast<u64>(m)))));
    for (std::size_t chi = static_cast<std::size_t>(m); chi < T.names.size(); ++chi) D.rows.push_back(solve_row(chi));
    return D;
}

/// Default numbering: ζ = n (mod ℓ), the eigenvalue of x on D/D^ℓ.
inline DecompositionMatrix brute_decomposition_matrix(const MetacyclicGroup& G) { return brute_decomposition_matrix(G, G.n % G.ell); }

/// dim e_i·(J/J²)·e_j in F_ℓH, with e_i the idempotent on which x acts by ζ^i
/// and J = (y − 1)·F_ℓH the radical. Entry [i][j] is dim Ext¹(S_i, S_j) for
/// right modules.
inline std::vector<std::vector<int>> group_ext_matrix(const MetacyclicGroup& G, u64 zeta) {
    const u64 p = G.ell;
    const std::size_t N = G.order();
    const int m = G.e_order;
    using Vec = std::vector<u64>;
    auto mul = [&](const Vec& a, const Vec& b) {
        Vec r(N, 0);
        for (std::size_t g = 0; g < N; ++g) {
            if (!a[g]) continue;
            for (std::size_t h = 0; h < N; ++h) {
                if (!b[h]) continue;
                auto& cell = r[G.mul(g, h)];
                cell = (cell + mulmod(a[g], b[h], p)) % p;
            }
        }
        return r;
    };
    auto basis_vec = [&](std::size_t g) {
        Vec v(N, 0);
        v[g] = 1;
        return v;
    };
    const u64 inv_m = *invmod(static_cast<u64>(m) % p, p);
    const u64 z = zeta % p;
    const u64 zinv = *invmod(z, p);
    std::vector<Vec> e(static_cast<std::size_t>(m), Vec(N, 0));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) e[static_cast<std::size_t>(i)][G.element(k, 0)] = mulmod(inv_m, powmod(zinv, static_cast<u64>(i * k), p), p);
    Vec ym1 = basis_vec(G.element(0, 1));
    ym1[0] = (ym1[0] + p - 1) % p;
    const Vec ym1sq = mul(ym1, ym1);
    auto span_rank = [&](const std::vector<Vec>& vs) {
        Matrix M(vs.size(), N);
        for (std::size_t r = 0; r < vs.size(); ++r)
            for (std::size_t c = 0; c < N; ++c) M(r, c) = vs[r][c];
        return static_cast<int>(fp::rank(M, p));
    };
    std::vector<std::vector<int>> E(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), 0));
    for (int i = 0; i < m; ++i) {
        const Vec ej = e[static_cast<std::size_t>(i)];
        const Vec left1 = mul(ej, ym1), left2 = mul(ej, ym1sq);
        std::vector<Vec> j1, j2;
        for (std::size_t g = 0; g < N; ++g) {
            j1.push_back(mul(left1, basis_vec(g)));
            j2.push_back(mul(left2, basis_vec(g)));
        }
        for (int j = 0; j < m; ++j) {
            std::vector<Vec> a, b;
            for (const auto& v : j1) a.push_back(mul(v, e[static_cast<std::size_t>(j)]));
            for (const auto& v : j2) b.push_back(mul(v, e[static_cast<std::size_t>(j)]));
            E[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = span_rank(a) - span_rank(b);
        }
    }
    return E;
}

struct StarVerification {
    DecompositionMatrix tree_matrix;
    DecompositionMatrix oracle_matrix;
    std::vector<std::vector<int>> tree_ext;
    std::vector<std::vector<int>> group_ext;
    bool match = false;
};

/// Cell-exact comparison of the star tree against D⋊E: decomposition
/// matrices in the η_j numbering fixed by the tree's ζ lift, and the Ext¹
/// quiver of the tree algebra against that of F_ℓH. Throws Mismatch.
inline StarVerification verify_star(const PlanarBrauerTree& tree, const MetacyclicGroup& G) {
    if (!tree.zeta_lift) throw Mismatch(-1, -1, "tree carries no zeta lift");
    if (tree.h0 != G.e_order || tree.multiplicity != static_cast<int>((G.d_order - 1) / static_cast<u64>(G.e_order)))
        throw Mismatch(-1, -1, "tree shape does not match |E| and the number of exceptional characters");
    StarVerification out;
    const u64 zeta = *tree.zeta_lift % G.ell;
    out.tree_matrix = decomposition_matrix(tree);
    out.oracle_matrix = brute_decomposition_matrix(G, zeta);
    for (std::size_t r = 0; r < out.tree_matrix.rows.size(); ++r)
        for (std::size_t c = 0; c < out.tree_matrix.rows[r].size(); ++c)
            if (out.tree_matrix.rows[r][c] != out.oracle_matrix.rows[r][c])
                throw Mismatch(static_cast<int>(r), static_cast<int>(c), "decomposition numbers differ at (" + std::to_string(r) + ", " + std::to_string(c) + ")");
    out.tree_ext = from_tree(tree, G.ell).ext1_matrix();
    out.group_ext = group_ext_matrix(G, zeta);
    for (std::size_t i = 0; i < out.tree_ext.size(); ++i)
        for (std::size_t j = 0; j < out.tree_ext.size(); ++j)
            if (out.tree_ext[i][j] != out.group_ext[i][j])
                throw Mismatch(static_cast<int>(i), static_cast<int>(j),
                               "Ext^1(S_" + std::to_string(i) + ", S_" + std::to_string(j) + ") is " + std::to_string(out.tree_ext[i][j]) +
                                   " for the tree but " + std::to_string(out.group_ext[i][j]) + " for the group");
    out.match = true;
    return out;
}

} // namespace coxbrauer
