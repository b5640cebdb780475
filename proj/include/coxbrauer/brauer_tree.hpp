#pragma once

// Planar-embedded Brauer trees of HLM shape, the star tree of D⋊E,
// decomposition and Cartan matrices, heights and unitriangularity.

#include <coxbrauer/ell_arith.hpp>
#include <coxbrauer/error.hpp>
#include <coxbrauer/modular.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace coxbrauer {

/// One Harish-Chandra series: the characters χ_m, …, χ_M attached to ζ.
struct Branch {
    i64 zeta = 0;
    int m = 0;
    int M = 0;

    int length() const { return M - m + 1; }
    friend bool operator==(const Branch&, const Branch&) = default;
};

struct SeriesDatum {
    int h0 = 0;
    std::vector<Branch> branches;
};

/// Intervals must be non-empty, lie in [0, h0) and partition it.
inline void validate_series(const SeriesDatum& s) {
    if (s.h0 < 1) throw Error(ErrorCode::InvalidSeries, "h0 must be positive");
    if (s.branches.empty()) throw Error(ErrorCode::InvalidSeries, "series has no branches");
    std::vector<int> hits(static_cast<std::size_t>(s.h0), 0);
    for (const auto& b : s.branches) {
        if (b.m > b.M) throw Error(ErrorCode::InvalidSeries, "empty interval [" + std::to_string(b.m) + ", " + std::to_string(b.M) + "]");
        if (b.m < 0 || b.M >= s.h0)
            throw Error(ErrorCode::InvalidSeries, "interval [" + std::to_string(b.m) + ", " + std::to_string(b.M) + "] leaves [0, h0)");
        for (int j = b.m; j <= b.M; ++j) ++hits[static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < s.h0; ++j)
        if (hits[static_cast<std::size_t>(j)] != 1)
            throw Error(ErrorCode::InvalidSeries, "index " + std::to_string(j) + " is covered " +
                                                      std::to_string(hits[static_cast<std::size_t>(j)]) + " times");
}

struct VertexAnnotation {
    std::optional<std::string> label;
    std::optional<i64> a_chi;
    std::optional<i64> A_chi;

    friend bool operator==(const VertexAnnotation&, const VertexAnnotation&) = default;
};

/// Vertices χ_0..χ_{h0−1} have ids 0..h0−1 and the exceptional node has id h0.
/// Edge S_j has id j and joins χ_j to χ_{j−1}, or to the exceptional node when
/// j starts its branch.
struct PlanarBrauerTree {
    int h0 = 0;
    int r = 0;
    int multiplicity = 1;
    std::vector<Branch> branches;          // sorted by m
    std::vector<int> exceptional_order;    // anticlockwise edge ids around the exceptional node
    std::vector<VertexAnnotation> vertices; // one per χ_j
    std::optional<u64> ell;
    std::optional<u64> zeta_lift;          // star trees: ζ modulo |D|

    friend bool operator==(const PlanarBrauerTree&, const PlanarBrauerTree&) = default;

    int exceptional() const { return h0; }
    int vertex_count() const { return h0 + 1; }
    int edge_count() const { return h0; }

    std::size_t branch_index(int j) const {
        for (std::size_t b = 0; b < branches.size(); ++b)
            if (branches[b].m <= j && j <= branches[b].M) return b;
        fail(ErrorCode::InvalidArgument, "index " + std::to_string(j) + " is outside every branch");
    }
    const Branch& branch_of(int j) const { return branches[branch_index(j)]; }

    /// (inner endpoint, outer endpoint χ_j) of edge S_j.
    std::pair<int, int> endpoints(int j) const {
        check_edge(j);
        const auto& b = branch_of(j);
        return {j == b.m ? exceptional() : j - 1, j};
    }

    int height(int j) const {
        check_edge(j);
        return j - branch_of(j).m;
    }

    int vertex_multiplicity(int v) const { return v == exceptional() ? multiplicity : 1; }

    /// Anticlockwise cyclic order of the edges at a vertex.
    std::vector<int> cyclic_order(int v) const {
        if (v == exceptional()) return exceptional_order;
        check_edge(v);
        const auto& b = branch_of(v);
        if (v < b.M) return {v, v + 1};
        return {v};
    }

    int degree(int v) const { return static_cast<int>(cyclic_order(v).size()); }

    /// Edge following e anticlockwise around vertex v.
    int successor(int v, int e) const {
        auto order = cyclic_order(v);
        auto it = std::find(order.begin(), order.end(), e);
        if (it == order.end()) fail(ErrorCode::InvalidArgument, "edge is not incident to the vertex");
        ++it;
        return it == order.end() ? order.front() : *it;
    }

    std::string vertex_name(int v) const {
        if (v == exceptional()) return "exc";
        if (v >= 0 && v < h0 && vertices[static_cast<std::size_t>(v)].label) return *vertices[static_cast<std::size_t>(v)].label;
        return "chi" + std::to_string(v);
    }

    void check_edge(int j) const {
        if (j < 0 || j >= h0) fail(ErrorCode::InvalidArgument, "edge index " + std::to_string(j) + " out of range [0, " + std::to_string(h0) + ")");
    }
};

/// Structural checks: tree shape, HLM edges, a permutation as exceptional order.
inline void check_tree(const PlanarBrauerTree& t) {
    validate_series({t.h0, t.branches});
    if (t.multiplicity < 1) throw Error(ErrorCode::InvalidSeries, "multiplicity must be at least 1");
    if (static_cast<int>(t.vertices.size()) != t.h0) throw Error(ErrorCode::InvalidSeries, "one annotation slot per vertex expected");
    std::vector<int> starts;
    for (const auto& b : t.branches) starts.push_back(b.m);
    auto sorted_order = t.exceptional_order;
    std::sort(sorted_order.begin(), sorted_order.end());
    std::sort(starts.begin(), starts.end());
    if (sorted_order != starts)
        throw Error(ErrorCode::InvalidSeries, "exceptional cyclic order must list each branch-start edge once");
    // h0 edges on h0 + 1 vertices, connected ⇒ tree.
    std::vector<int> parent(static_cast<std::size_t>(t.vertex_count()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (int j = 0; j < t.h0; ++j) {
        auto [u, v] = t.endpoints(j);
        int a = find(u), b = find(v);
        if (a == b) throw Error(ErrorCode::InvalidSeries, "edges contain a cycle");
        parent[static_cast<std::size_t>(a)] = b;
    }
}

/// Exceptional order from the successor rule: after S_{m_ζ} comes S_{m_ξ}
/// with m_ξ ≡ M_ζ + 1 (mod h0).
inline std::vector<int> successor_rule_order(const std::vector<Branch>& branches, int h0) {
    std::map<int, const Branch*> by_start;
    for (const auto& b : branches) by_start[b.m] = &b;
    std::vector<int> order;
    const Branch* cur = by_start.begin()->second;
    for (std::size_t k = 0; k < branches.size(); ++k) {
        order.push_back(cur->m);
        auto it = by_start.find((cur->M + 1) % h0);
        if (it == by_start.end()) throw Error(ErrorCode::InvalidSeries, "successor rule leaves the set of branches");
        cur = it->second;
    }
    if (cur != by_start.begin()->second) throw Error(ErrorCode::InvalidSeries, "successor rule is not a single cycle");
    return order;
}

/// (|T_c|_ℓ − 1)/h0.
inline int exceptional_multiplicity(u64 ell_part, int h0) {
    if (h0 < 1 || (ell_part - 1) % static_cast<u64>(h0) != 0)
        throw Error(ErrorCode::NonIntegral, "(" + std::to_string(ell_part) + " - 1)/" + std::to_string(h0) + " is not an integer");
    return static_cast<int>((ell_part - 1) / static_cast<u64>(h0));
}

inline int exceptional_multiplicity(const EllContext& ctx) {
    BigInt part = 1;
    for (int i = 0; i < ctx.torus_valuation; ++i) part *= ctx.ell;
    if (part > BigInt(std::numeric_limits<int>::max())) fail(ErrorCode::InvalidArgument, "ell-part of the torus is too large");
    return exceptional_multiplicity(static_cast<u64>(part), ctx.datum.h0);
}

inline PlanarBrauerTree build_hlm_tree(const SeriesDatum& series, int multiplicity, int r) {
    validate_series(series);
    PlanarBrauerTree t;
    t.h0 = series.h0;
    t.r = r;
    t.multiplicity = multiplicity;
    t.branches = series.branches;
    std::sort(t.branches.begin(), t.branches.end(), [](const Branch& a, const Branch& b) { return a.m < b.m; });
    t.exceptional_order = successor_rule_order(t.branches, t.h0);
    t.vertices.assign(static_cast<std::size_t>(t.h0), {});
    check_tree(t);
    return t;
}

inline PlanarBrauerTree build_hlm_tree(const EllContext& ctx, const SeriesDatum& series) {
    if (series.h0 != ctx.datum.h0)
        throw Error(ErrorCode::InvalidSeries, "series h0 = " + std::to_string(series.h0) + " but the type has h0 = " + std::to_string(ctx.datum.h0));
    auto t = build_hlm_tree(series, exceptional_multiplicity(ctx), ctx.datum.r);
    t.ell = ctx.ell;
    return t;
}

/// Single branch χ_0--…--χ_{h0−1} hanging off the exceptional node.
inline PlanarBrauerTree line_tree(int h0, int multiplicity, int r) {
    return build_hlm_tree(SeriesDatum{h0, {{0, 0, h0 - 1}}}, multiplicity, r);
}

/// Brauer tree of D⋊E with |D| = ℓ^α, |E| = e, and x·y·x^{-1} = y^n.
inline PlanarBrauerTree build_star_tree(u64 d_order, int e_order, u64 n) {
    auto pp = as_prime_power(d_order);
    if (!pp) fail(ErrorCode::InvalidArgument, "|D| must be a prime power");
    const u64 ell = pp->prime;
    if (e_order < 1 || static_cast<u64>(e_order) % ell == 0) fail(ErrorCode::InvalidArgument, "|E| must be prime to ell");
    n %= d_order;
    if (std::gcd(n, d_order) != 1 || powmod(n, static_cast<u64>(e_order), d_order) != 1)
        throw Error(ErrorCode::BadAction, "n^|E| must be 1 modulo |D|");
    if (multiplicative_order(n % ell, ell) != static_cast<u64>(e_order))
        throw Error(ErrorCode::BadAction, "n must have order |E| = " + std::to_string(e_order) + " modulo " + std::to_string(ell));
    SeriesDatum s{e_order, {}};
    for (int j = 0; j < e_order; ++j) s.branches.push_back({j, j, j});
    auto t = build_hlm_tree(s, exceptional_multiplicity(d_order, e_order), 0);
    t.ell = ell;
    t.zeta_lift = hensel_root(TruncatedPadic{1, ell, pp->exponent}, static_cast<u64>(e_order), n % ell).value;
    for (int j = 0; j < e_order; ++j) t.vertices[static_cast<std::size_t>(j)].label = "eta" + std::to_string(j);
    return t;
}

/// Rows χ_0..χ_{h0−1} then μ exceptional rows; columns S_0..S_{h0−1}.
struct DecompositionMatrix {
    int h0 = 0;
    int multiplicity = 0;
    std::vector<std::vector<int>> rows;

    std::size_t row_count() const { return rows.size(); }

    /// Exceptional rows summed into one.
    std::vector<std::vector<int>> collapsed() const {
        std::vector<std::vector<int>> out(rows.begin(), rows.begin() + h0);
        std::vector<int> exc(static_cast<std::size_t>(h0), 0);
        for (std::size_t r = static_cast<std::size_t>(h0); r < rows.size(); ++r)
            for (int c = 0; c < h0; ++c) exc[static_cast<std::size_t>(c)] = std::max(exc[static_cast<std::size_t>(c)], rows[r][static_cast<std::size_t>(c)]);
        out.push_back(exc);
        return out;
    }

    friend bool operator==(const DecompositionMatrix&, const DecompositionMatrix&) = default;
};

inline DecompositionMatrix decomposition_matrix(const PlanarBrauerTree& t) {
    DecompositionMatrix D;
    D.h0 = t.h0;
    D.multiplicity = t.multiplicity;
    D.rows.assign(static_cast<std::size_t>(t.h0 + t.multiplicity), std::vector<int>(static_cast<std::size_t>(t.h0), 0));
    for (int j = 0; j < t.h0; ++j) {
        auto [u, v] = t.endpoints(j);
        D.rows[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)] = 1;
        if (u == t.exceptional()) {
            for (int k = 0; k < t.multiplicity; ++k) D.rows[static_cast<std::size_t>(t.h0 + k)][static_cast<std::size_t>(j)] = 1;
        } else {
            D.rows[static_cast<std::size_t>(u)][static_cast<std::size_t>(j)] = 1;
        }
    }
    // Each projective has exactly two ordinary constituents.
    auto coll = D.collapsed();
    for (int j = 0; j < t.h0; ++j) {
        int s = 0;
        for (const auto& row : coll) s += row[static_cast<std::size_t>(j)];
        if (s != 2) fail(ErrorCode::IntegralityFailure, "column " + std::to_string(j) + " does not have two constituents");
    }
    return D;
}

using IntMatrix = std::vector<std::vector<i64>>;

/// DᵀD, each exceptional row counted.
inline IntMatrix cartan_matrix(const DecompositionMatrix& D) {
    const std::size_t n = static_cast<std::size_t>(D.h0);
    IntMatrix C(n, std::vector<i64>(n, 0));
    for (const auto& row : D.rows)
        for (std::size_t a = 0; a < n; ++a)
            if (row[a])
                for (std::size_t b = 0; b < n; ++b) C[a][b] += static_cast<i64>(row[a]) * row[b];
    return C;
}

inline int height(const PlanarBrauerTree& t, int j) { return t.height(j); }

inline int perversity(const PlanarBrauerTree& t, int i) { return i - 2 * t.r; }

/// Vertices sorted by height of their paired edge, descending (ties by index).
inline std::vector<int> height_ordering(const PlanarBrauerTree& t) {
    std::vector<int> order(static_cast<std::size_t>(t.h0));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return t.height(a) > t.height(b); });
    return order;
}

/// Vertices sorted by a_χ ascending; falls back to heights when allowed.
inline std::vector<int> annotation_ordering(const PlanarBrauerTree& t, bool height_fallback) {
    bool complete = std::all_of(t.vertices.begin(), t.vertices.end(), [](const VertexAnnotation& v) { return v.a_chi.has_value(); });
    if (!complete) {
        if (!height_fallback) throw Error(ErrorCode::MissingAnnotations, "a_chi annotations are missing");
        return height_ordering(t);
    }
    std::vector<int> order(static_cast<std::size_t>(t.h0));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return *t.vertices[static_cast<std::size_t>(a)].a_chi < *t.vertices[static_cast<std::size_t>(b)].a_chi;
    });
    return order;
}

struct UnitriangularResult {
    bool ok = false;
    std::vector<int> order;  // row χ order, paired with columns S in the same order
    std::string reason;
};

/// Is the top block of D, rows and columns both permuted by `order` (χ_j paired
/// with S_j), lower unitriangular?
inline UnitriangularResult check_unitriangular(const DecompositionMatrix& D, const std::vector<int>& order) {
    UnitriangularResult res;
    res.order = order;
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(static_cast<std::size_t>(D.h0));
    std::iota(expect.begin(), expect.end(), 0);
    if (sorted != expect) fail(ErrorCode::InvalidArgument, "ordering must be a permutation of the vertices");
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = 0; b < order.size(); ++b) {
            const int v = D.rows[static_cast<std::size_t>(order[a])][static_cast<std::size_t>(order[b])];
            if (a == b && v != 1) {
                res.reason = "diagonal entry at chi" + std::to_string(order[a]) + " is " + std::to_string(v);
                return res;
            }
            if (b > a && v != 0) {
                res.reason = "entry above the diagonal at (chi" + std::to_string(order[a]) + ", S" + std::to_string(order[b]) + ")";
                return res;
            }
        }
    }
    res.ok = true;
    return res;
}

/// n_χ = 2r − (a_χ + A_χ)/h.
inline Rational n_chi(const PlanarBrauerTree& t, int j, int h) {
    t.check_edge(j);
    const auto& v = t.vertices[static_cast<std::size_t>(j)];
    if (!v.a_chi || !v.A_chi) throw Error(ErrorCode::MissingAnnotations, "chi" + std::to_string(j) + " lacks a/A annotations");
    return Rational(2 * t.r) - Rational(*v.a_chi + *v.A_chi, h);
}

/// Along each branch, n_χ strictly increases with j (a_χ + A_χ decreases).
inline bool n_chi_monotone(const PlanarBrauerTree& t, int h) {
    for (const auto& b : t.branches)
        for (int j = b.m; j < b.M; ++j)
            if (!(n_chi(t, j, h) < n_chi(t, j + 1, h))) return false;
    return true;
}

// Built-in fixture for ²G₂: five series, indexed by the exponent k with
// ζ ≡ ξ^k, ξ ≡ q^5 (mod ℓ) a primitive 12th root of unity.
inline SeriesDatum g2ree_series() {
    return SeriesDatum{6, {{0, 0, 1}, {3, 2, 2}, {1, 3, 3}, {11, 4, 4}, {9, 5, 5}}};
}

inline PlanarBrauerTree g2ree_tree(const EllContext& ctx) {
    if (ctx.datum.type.family != Family::G2Ree) fail(ErrorCode::InvalidArgument, "the 2G2 fixture needs a 2G2 regime");
    auto t = build_hlm_tree(ctx, g2ree_series());
    const char* labels[] = {"St", "1", "2G2[i]", "2G2[xi]", "2G2[xibar]", "2G2[-i]"};
    for (int j = 0; j < 6; ++j) t.vertices[static_cast<std::size_t>(j)].label = labels[j];
    return t;
}

} // namespace coxbrauer
