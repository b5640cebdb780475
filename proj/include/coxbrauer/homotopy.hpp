#pragma once

// Bounded complexes of projective modules over a Brauer tree algebra:
// cohomology, trimming, Hom complexes, Rickard complexes and tilting checks.

#include <coxbrauer/brauer_tree.hpp>
#include <coxbrauer/error.hpp>
#include <coxbrauer/linalg.hpp>
#include <coxbrauer/tree_algebra.hpp>

#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coxbrauer {

/// Terms are direct sums of indecomposable projectives P_x. The boundary
/// d[k] maps terms[k] to terms[k+1]; entry (t, s) is an element of
/// e_{y_t}·A·e_{x_s}, acting on P_{x_s} by left multiplication.
struct ProjComplex {
    int lo = 0;
    std::vector<std::vector<int>> terms;
    std::vector<std::vector<std::vector<Elem>>> d; // d.size() == terms.size() − 1 (or 0)

    int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
    bool empty() const { return terms.empty(); }

    const std::vector<int>& term(int degree) const {
        static const std::vector<int> none;
        if (degree < lo || degree > hi()) return none;
        return terms[static_cast<std::size_t>(degree - lo)];
    }
};

namespace detail {

inline std::vector<std::vector<Elem>> zero_block(const TreeAlgebra& A, std::size_t rows, std::size_t cols) {
    return std::vector<std::vector<Elem>>(rows, std::vector<Elem>(cols, A.zero()));
}

} // namespace detail

/// Entry of the boundary leaving `degree`, from summand s to summand t.
inline const Elem* boundary_entry(const ProjComplex& C, int degree, std::size_t t, std::size_t s) {
    if (degree < C.lo || degree >= C.hi()) return nullptr;
    return &C.d[static_cast<std::size_t>(degree - C.lo)][t][s];
}

/// Removes zero terms at both ends.
inline ProjComplex normalize(ProjComplex C) {
    while (!C.terms.empty() && C.terms.front().empty()) {
        C.terms.erase(C.terms.begin());
        if (!C.d.empty()) C.d.erase(C.d.begin());
        ++C.lo;
    }
    while (!C.terms.empty() && C.terms.back().empty()) {
        C.terms.pop_back();
        if (!C.d.empty()) C.d.pop_back();
    }
    if (C.terms.empty()) {
        C.lo = 0;
        C.d.clear();
    }
    return C;
}

/// Shift C[n]: (C[n])^k = C^{k+n}, boundaries multiplied by (−1)^n.
inline ProjComplex shift(const TreeAlgebra& A, ProjComplex C, int n) {
    C.lo -= n;
    if (n % 2 != 0)
        for (auto& block : C.d)
            for (auto& row : block)
                for (auto& e : row) e = A.scale(e, A.field() - 1);
    return C;
}

inline ProjComplex direct_sum(const TreeAlgebra& A, const std::vector<ProjComplex>& parts) {
    std::vector<ProjComplex> ps;
    for (const auto& p : parts)
        if (!p.empty()) ps.push_back(p);
    if (ps.empty()) return {};
    int lo = ps.front().lo, hi = ps.front().hi();
    for (const auto& p : ps) {
        lo = std::min(lo, p.lo);
        hi = std::max(hi, p.hi());
    }
    ProjComplex out;
    out.lo = lo;
    out.terms.resize(static_cast<std::size_t>(hi - lo + 1));
    // Offsets of each part's summands within each degree.
    std::vector<std::vector<std::size_t>> offset(ps.size(), std::vector<std::size_t>(out.terms.size(), 0));
    for (std::size_t k = 0; k < out.terms.size(); ++k)
        for (std::size_t q = 0; q < ps.size(); ++q) {
            offset[q][k] = out.terms[k].size();
            const auto& t = ps[q].term(lo + static_cast<int>(k));
            out.terms[k].insert(out.terms[k].end(), t.begin(), t.end());
        }
    for (std::size_t k = 0; k + 1 < out.terms.size(); ++k) {
        auto block = detail::zero_block(A, out.terms[k + 1].size(), out.terms[k].size());
        for (std::size_t q = 0; q < ps.size(); ++q) {
            const int deg = lo + static_cast<int>(k);
            if (deg < ps[q].lo || deg >= ps[q].hi()) continue;
            const auto& src = ps[q].d[static_cast<std::size_t>(deg - ps[q].lo)];
            for (std::size_t t = 0; t < src.size(); ++t)
                for (std::size_t s = 0; s < src[t].size(); ++s) block[offset[q][k + 1] + t][offset[q][k] + s] = src[t][s];
        }
        out.d.push_back(std::move(block));
    }
    return out;
}

/// Checks shapes, that entries lie in the right e_y·A·e_x, and d∘d = 0.
inline bool is_complex(const TreeAlgebra& A, const ProjComplex& C) {
    if (C.terms.size() > 1 && C.d.size() != C.terms.size() - 1) return false;
    for (std::size_t k = 0; k < C.d.size(); ++k) {
        const auto& blk = C.d[k];
        if (blk.size() != C.terms[k + 1].size()) return false;
        for (std::size_t t = 0; t < blk.size(); ++t) {
            if (blk[t].size() != C.terms[k].size()) return false;
            for (std::size_t s = 0; s < blk[t].size(); ++s)
                for (std::size_t b = 0; b < A.dim(); ++b)
                    if (blk[t][s][b] && (A.basis()[b].start != C.terms[k + 1][t] || A.basis()[b].end != C.terms[k][s])) return false;
        }
    }
    for (std::size_t k = 0; k + 1 < C.d.size(); ++k) {
        for (std::size_t u = 0; u < C.terms[k + 2].size(); ++u)
            for (std::size_t s = 0; s < C.terms[k].size(); ++s) {
                Elem acc = A.zero();
                for (std::size_t t = 0; t < C.terms[k + 1].size(); ++t) acc = A.add(acc, A.mul(C.d[k + 1][u][t], C.d[k][t][s]));
                if (!A.is_zero(acc)) return false;
            }
    }
    return true;
}

namespace detail {

// Boundary d^k as an F_p-linear map between the underlying vector spaces,
// restricted to basis elements ending at vertex v (the maps preserve it).
inline Matrix linear_boundary(const TreeAlgebra& A, const ProjComplex& C, int degree, int v) {
    const auto& src = C.term(degree);
    const auto& dst = C.term(degree + 1);
    std::vector<std::pair<std::size_t, int>> cols, rows; // (summand, basis index)
    for (std::size_t s = 0; s < src.size(); ++s)
        for (int b : A.paths(src[s], v)) cols.emplace_back(s, b);
    for (std::size_t t = 0; t < dst.size(); ++t)
        for (int b : A.paths(dst[t], v)) rows.emplace_back(t, b);
    Matrix M(rows.size(), cols.size());
    if (degree < C.lo || degree >= C.hi()) return M;
    std::map<std::pair<std::size_t, int>, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;
    const u64 p = A.field();
    const auto& blk = C.d[static_cast<std::size_t>(degree - C.lo)];
    for (std::size_t c = 0; c < cols.size(); ++c) {
        auto [s, b] = cols[c];
        for (std::size_t t = 0; t < dst.size(); ++t) {
            const Elem& e = blk[t][s];
            for (std::size_t x = 0; x < A.dim(); ++x) {
                if (!e[x]) continue;
                const int r = A.mul_basis(static_cast<int>(x), b);
                if (r >= 0) {
                    auto& cell = M(row_of.at({t, r}), c);
                    cell = (cell + e[x]) % p;
                }
            }
        }
    }
    return M;
}

inline std::size_t term_dimension(const TreeAlgebra& A, const std::vector<int>& term, int v) {
    std::size_t n = 0;
    for (int x : term) n += A.paths(x, v).size();
    return n;
}

} // namespace detail

/// Composition factors of H^k for every degree k in [lo, hi]: entry [k−lo][v]
/// is the multiplicity of S_v.
inline std::map<int, std::vector<int>> cohomology(const TreeAlgebra& A, const ProjComplex& C) {
    std::map<int, std::vector<int>> out;
    if (C.empty()) return out;
    const u64 p = A.field();
    for (int k = C.lo; k <= C.hi(); ++k) {
        std::vector<int> mult(static_cast<std::size_t>(A.vertex_count()), 0);
        for (int v = 0; v < A.vertex_count(); ++v) {
            const std::size_t n = detail::term_dimension(A, C.term(k), v);
            const std::size_t rank_out = k < C.hi() ? fp::rank(detail::linear_boundary(A, C, k, v), p) : 0;
            const std::size_t rank_in = k > C.lo ? fp::rank(detail::linear_boundary(A, C, k - 1, v), p) : 0;
            mult[static_cast<std::size_t>(v)] = static_cast<int>(n - rank_out - rank_in);
        }
        out[k] = mult;
    }
    return out;
}

/// Coefficients over χ_0, …, χ_{h0−1}, χ_exc (last).
using CharacterVector = std::vector<i64>;

/// [P_j] = sum of the characters at the two ends of S_j.
inline CharacterVector projective_character(const PlanarBrauerTree& t, int j) {
    CharacterVector c(static_cast<std::size_t>(t.h0 + 1), 0);
    auto [u, v] = t.endpoints(j);
    c[static_cast<std::size_t>(u)] += 1;
    c[static_cast<std::size_t>(v)] += 1;
    return c;
}

/// Σ_k (−1)^{k − base} [C^k].
inline CharacterVector euler_character(const PlanarBrauerTree& t, const ProjComplex& C, int base) {
    CharacterVector total(static_cast<std::size_t>(t.h0 + 1), 0);
    for (int k = C.lo; k <= C.hi() && !C.empty(); ++k) {
        const i64 sign = ((k - base) % 2 == 0) ? 1 : -1;
        for (int x : C.term(k)) {
            auto c = projective_character(t, x);
            for (std::size_t i = 0; i < c.size(); ++i) total[i] += sign * c[i];
        }
    }
    return total;
}

inline CharacterVector euler_character(const PlanarBrauerTree& t, const ProjComplex& C) { return euler_character(t, C, t.r); }

/// 0 → P_m → P_{m+1} → ⋯ → P_j → 0 in degrees r, …, r + j − m, where m
/// starts the branch of j; each boundary is the arrow P_i → P_{i+1} through
/// the node χ_i.
inline ProjComplex rickard_complex(const TreeAlgebra& A, int j) {
    const auto& t = A.tree();
    if (j < 0 || j >= t.h0) fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(j) + " out of range [0, " + std::to_string(t.h0) + ")");
    const int m = t.branch_of(j).m;
    ProjComplex C;
    C.lo = t.r;
    for (int i = m; i <= j; ++i) C.terms.push_back({i});
    for (int i = m; i < j; ++i) {
        // Path of length one from S_{i+1} to S_i around χ_i.
        int elem = -1;
        for (const auto& arrow : A.arrows())
            if (arrow.from == i + 1 && arrow.to == i && arrow.node == i) elem = arrow.element;
        if (elem < 0) fail(ErrorCode::IntegralityFailure, "missing arrow for the Rickard boundary");
        C.d.push_back({{A.unit_vector(elem)}});
    }
    if (!is_complex(A, C)) fail(ErrorCode::IntegralityFailure, "Rickard boundaries do not square to zero");
    return C;
}

/// Expected composition factors of H^*(rickard_complex(j)): μ·Σ_ξ S_{m_ξ} in
/// degree r, dec(χ_j) in degree r + j − m (both added when j = m).
inline std::map<int, std::vector<int>> rickard_cohomology_contract(const PlanarBrauerTree& t, int j) {
    const int m = t.branch_of(j).m;
    std::vector<int> bottom(static_cast<std::size_t>(t.h0), 0), top(static_cast<std::size_t>(t.h0), 0);
    for (int e : t.cyclic_order(t.exceptional())) bottom[static_cast<std::size_t>(e)] += t.multiplicity;
    auto D = decomposition_matrix(t);
    for (int e = 0; e < t.h0; ++e) top[static_cast<std::size_t>(e)] = D.rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)];
    std::map<int, std::vector<int>> out;
    for (int k = t.r; k <= t.r + j - m; ++k) out[k] = std::vector<int>(static_cast<std::size_t>(t.h0), 0);
    for (int e = 0; e < t.h0; ++e) {
        out[t.r][static_cast<std::size_t>(e)] += bottom[static_cast<std::size_t>(e)];
        out[t.r + j - m][static_cast<std::size_t>(e)] += top[static_cast<std::size_t>(e)];
    }
    return out;
}

namespace detail {

// Inverse of a unit λ·e_x + n (n radical) in e_x·A·e_x.
inline Elem invert_unit(const TreeAlgebra& A, const Elem& u, int x) {
    const u64 p = A.field();
    const u64 lambda = u[static_cast<std::size_t>(A.idempotent(x))];
    const u64 li = *invmod(lambda, p);
    // u = λ(e + n'), with n' = λ^{-1}·(u − λe) nilpotent.
    Elem n = A.scale(u, li);
    n[static_cast<std::size_t>(A.idempotent(x))] = 0;
    Elem neg = A.scale(n, p - 1);
    Elem sum = A.unit_vector(A.idempotent(x));
    Elem power = sum;
    for (std::size_t k = 0; k < A.dim(); ++k) {
        power = A.mul(power, neg);
        if (A.is_zero(power)) break;
        sum = A.add(sum, power);
    }
    return A.scale(sum, li);
}

} // namespace detail

/// An entry is invertible when source and target agree and its idempotent
/// coefficient is nonzero.
inline bool invertible_entry(const TreeAlgebra& A, const Elem& e, int x, int y) {
    return x == y && e[static_cast<std::size_t>(A.idempotent(x))] != 0;
}

/// Cancels one contractible pair P_x ≅ P_x across d^degree at (t, s).
inline ProjComplex cancel_pair(const TreeAlgebra& A, const ProjComplex& C, int degree, std::size_t t, std::size_t s) {
    const std::size_t k = static_cast<std::size_t>(degree - C.lo);
    const auto& dk = C.d[k];
    const int x = C.terms[k][s];
    const Elem phi_inv = detail::invert_unit(A, dk[t][s], x);
    const u64 p = A.field();
    ProjComplex out = C;
    // New d^k on X → Y: ε − γ·φ^{-1}·δ.
    std::vector<std::vector<Elem>> nd;
    for (std::size_t row = 0; row < dk.size(); ++row) {
        if (row == t) continue;
        std::vector<Elem> r;
        const Elem gphi = A.mul(dk[row][s], phi_inv);
        for (std::size_t col = 0; col < dk[row].size(); ++col) {
            if (col == s) continue;
            Elem v = dk[row][col];
            if (!A.is_zero(gphi)) v = A.add(v, A.scale(A.mul(gphi, dk[t][col]), p - 1));
            r.push_back(v);
        }
        nd.push_back(r);
    }
    out.d[k] = nd;
    out.terms[k].erase(out.terms[k].begin() + static_cast<std::ptrdiff_t>(s));
    out.terms[k + 1].erase(out.terms[k + 1].begin() + static_cast<std::ptrdiff_t>(t));
    if (k > 0) out.d[k - 1].erase(out.d[k - 1].begin() + static_cast<std::ptrdiff_t>(s));
    if (k + 1 < out.d.size())
        for (auto& row : out.d[k + 1]) row.erase(row.begin() + static_cast<std::ptrdiff_t>(t));
    return out;
}

/// Splits off every contractible summand, yielding a minimal complex (all
/// boundary entries radical). Its terms are then confined to [m, M] exactly
/// when the cohomology is.
inline ProjComplex minimal_complex(const TreeAlgebra& A, ProjComplex C) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int deg = C.lo; deg < C.hi() && !changed; ++deg) {
            const auto& blk = C.d[static_cast<std::size_t>(deg - C.lo)];
            for (std::size_t t = 0; t < blk.size() && !changed; ++t)
                for (std::size_t s = 0; s < blk[t].size() && !changed; ++s)
                    if (invertible_entry(A, blk[t][s], C.term(deg)[s], C.term(deg + 1)[t])) {
                        C = cancel_pair(A, C, deg, t, s);
                        changed = true;
                    }
        }
    }
    return normalize(std::move(C));
}

inline ProjComplex trim(const TreeAlgebra& A, const ProjComplex& C, int m, int M) {
    auto H = cohomology(A, C);
    for (const auto& [k, mult] : H)
        if ((k < m || k > M) && std::any_of(mult.begin(), mult.end(), [](int x) { return x != 0; }))
            throw Error(ErrorCode::CohomologyOutsideRange, "cohomology in degree " + std::to_string(k) + " lies outside [" +
                                                                 std::to_string(m) + ", " + std::to_string(M) + "]");
    ProjComplex out = minimal_complex(A, C);
    if (!out.empty() && (out.lo < m || out.hi() > M))
        throw Error(ErrorCode::CohomologyOutsideRange, "minimal complex leaves [" + std::to_string(m) + ", " + std::to_string(M) + "]");
    return out;
}

/// Adds the contractible summand 0 → P_x → P_x → 0 in degrees (degree, degree+1).
inline ProjComplex pad_contractible(const TreeAlgebra& A, ProjComplex C, int x, int degree) {
    if (C.empty()) {
        C.lo = degree;
        C.terms = {{}, {}};
        C.d = {{}};
    }
    while (degree < C.lo) {
        C.terms.insert(C.terms.begin(), std::vector<int>{});
        C.d.insert(C.d.begin(), detail::zero_block(A, C.terms[1].size(), 0));
        --C.lo;
    }
    while (degree + 1 > C.hi()) {
        C.terms.push_back({});
        C.d.push_back(detail::zero_block(A, 0, C.terms[C.terms.size() - 2].size()));
    }
    const std::size_t k = static_cast<std::size_t>(degree - C.lo);
    C.terms[k].push_back(x);
    C.terms[k + 1].push_back(x);
    // Grow d^{k−1} by a zero row, d^k by a row and column, d^{k+1} by a zero column.
    if (k > 0) C.d[k - 1].push_back(std::vector<Elem>(C.terms[k - 1].size(), A.zero()));
    for (auto& row : C.d[k]) row.push_back(A.zero());
    std::vector<Elem> last(C.terms[k].size(), A.zero());
    last.back() = A.unit_vector(A.idempotent(x));
    C.d[k].push_back(last);
    if (k + 1 < C.d.size())
        for (auto& row : C.d[k + 1]) row.push_back(A.zero());
    return C;
}

/// Conjugates by the elementary automorphism of C^degree adding c·(summand s)
/// to summand t (c ∈ e_{x_t}·A·e_{x_s}).
inline ProjComplex elementary_conjugate(const TreeAlgebra& A, ProjComplex C, int degree, std::size_t t, std::size_t s, const Elem& c) {
    const std::size_t k = static_cast<std::size_t>(degree - C.lo);
    const u64 p = A.field();
    if (k > 0) {
        auto& in = C.d[k - 1];
        for (std::size_t col = 0; col < in[t].size(); ++col) in[t][col] = A.add(in[t][col], A.mul(c, in[s][col]));
    }
    if (k < C.d.size()) {
        auto& out = C.d[k];
        for (auto& row : out) row[s] = A.add(row[s], A.scale(A.mul(row[t], c), p - 1));
    }
    return C;
}

/// Total Hom complex: Hom^n = Π_k Hom(C1^k, C2^{k+n}) with
/// D(f) = d2∘f − (−1)^n f∘d1. Returns the matrix of D from degree n to n+1
/// together with the dimensions.
struct HomComplex {
    int lo = 0;
    std::vector<std::size_t> dims;
    std::vector<Matrix> D; // D[i]: degree lo+i → lo+i+1

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
};

namespace detail {

struct HomCoord {
    int k;          // source degree in C1
    std::size_t s;  // summand of C1^k
    std::size_t t;  // summand of C2^{k+n}
    int path;       // basis index in e_{y_t}·A·e_{x_s}
};

inline std::vector<HomCoord> hom_basis(const TreeAlgebra& A, const ProjComplex& C1, const ProjComplex& C2, int n) {
    std::vector<HomCoord> out;
    for (int k = C1.lo; k <= C1.hi() && !C1.empty(); ++k) {
        const auto& src = C1.term(k);
        const auto& dst = C2.term(k + n);
        for (std::size_t s = 0; s < src.size(); ++s)
            for (std::size_t t = 0; t < dst.size(); ++t)
                for (int b : A.paths(dst[t], src[s])) out.push_back({k, s, t, b});
    }
    return out;
}

} // namespace detail

inline HomComplex hom_complex(const TreeAlgebra& A, const ProjComplex& C1, const ProjComplex& C2) {
    HomComplex H;
    if (C1.empty() || C2.empty()) return H;
    H.lo = C2.lo - C1.hi();
    const int hi = C2.hi() - C1.lo;
    const u64 p = A.field();
    std::vector<std::vector<detail::HomCoord>> bases;
    for (int n = H.lo; n <= hi + 1; ++n) bases.push_back(detail::hom_basis(A, C1, C2, n));
    for (int n = H.lo; n <= hi; ++n) H.dims.push_back(bases[static_cast<std::size_t>(n - H.lo)].size());
    for (int n = H.lo; n <= hi; ++n) {
        const auto& from = bases[static_cast<std::size_t>(n - H.lo)];
        const auto& to = bases[static_cast<std::size_t>(n + 1 - H.lo)];
        std::map<std::tuple<int, std::size_t, std::size_t, int>, std::size_t> row_of;
        for (std::size_t i = 0; i < to.size(); ++i) row_of[{to[i].k, to[i].s, to[i].t, to[i].path}] = i;
        Matrix M(to.size(), from.size());
        const u64 sign = (n % 2 == 0) ? p - 1 : 1; // −(−1)^n
        for (std::size_t c = 0; c < from.size(); ++c) {
            const auto& f = from[c];
            // d2 ∘ f: lands in Hom(C1^k, C2^{k+n+1}).
            if (const int deg = f.k + n; deg >= C2.lo && deg < C2.hi()) {
                const auto& blk = C2.d[static_cast<std::size_t>(deg - C2.lo)];
                for (std::size_t t2 = 0; t2 < blk.size(); ++t2) {
                    const Elem& e = blk[t2][f.t];
                    for (std::size_t x = 0; x < A.dim(); ++x) {
                        if (!e[x]) continue;
                        const int r = A.mul_basis(static_cast<int>(x), f.path);
                        if (r < 0) continue;
                        auto& cell = M(row_of.at({f.k, f.s, t2, r}), c);
                        cell = (cell + e[x]) % p;
                    }
                }
            }
            // −(−1)^n f ∘ d1: lands in Hom(C1^{k−1}, C2^{k+n}).
            if (const int deg = f.k - 1; deg >= C1.lo && deg < C1.hi()) {
                const auto& blk = C1.d[static_cast<std::size_t>(deg - C1.lo)];
                for (std::size_t s1 = 0; s1 < blk[f.s].size(); ++s1) {
                    const Elem& e = blk[f.s][s1];
                    for (std::size_t x = 0; x < A.dim(); ++x) {
                        if (!e[x]) continue;
                        const int r = A.mul_basis(f.path, static_cast<int>(x));
                        if (r < 0) continue;
                        auto& cell = M(row_of.at({deg, s1, f.t, r}), c);
                        cell = (cell + mulmod(e[x], sign, p)) % p;
                    }
                }
            }
        }
        H.D.push_back(M);
    }
    return H;
}

/// dim H^i(Hom(C1, C2)) = dim Hom_{K^b}(C1, C2[i]).
inline std::size_t homotopy_hom(const TreeAlgebra& A, const HomComplex& H, int i) {
    if (i < H.lo || i > H.hi()) return 0;
    const u64 p = A.field();
    const std::size_t idx = static_cast<std::size_t>(i - H.lo);
    const std::size_t n = H.dims[idx];
    const std::size_t rank_out = fp::rank(H.D[idx], p);
    const std::size_t rank_in = idx > 0 ? fp::rank(H.D[idx - 1], p) : 0;
    return n - rank_out - rank_in;
}

inline std::size_t homotopy_hom(const TreeAlgebra& A, const ProjComplex& C1, const ProjComplex& C2, int i) {
    return homotopy_hom(A, hom_complex(A, C1, C2), i);
}

/// All nonzero dim Hom_{K^b}(C1, C2[i]), keyed by i.
inline std::map<int, std::size_t> homotopy_hom_table(const TreeAlgebra& A, const ProjComplex& C1, const ProjComplex& C2) {
    std::map<int, std::size_t> out;
    auto H = hom_complex(A, C1, C2);
    for (int i = H.lo; i <= H.hi() && !H.dims.empty(); ++i)
        if (auto d = homotopy_hom(A, H, i)) out[i] = d;
    return out;
}

struct TiltingReport {
    bool hom_vanishing = false;
    bool generation = false;
    bool end_dimension = false;
    std::size_t end_dim = 0;
    std::size_t expected_end_dim = 0;
    std::map<std::pair<int, int>, std::map<int, std::size_t>> homs; // (j, j') → {i: dim}

    bool ok() const { return hom_vanishing && generation && end_dimension; }
};

/// Verifies that ⊕_j C_j is tilting: Hom_{K^b}(C_j, C_{j'}[i]) = 0 for i ≠ 0,
/// every projective occurs in some term, and dim End = h0(h0·μ + 1), the
/// dimension of the star algebra. Throws TiltingFailure on the first failure.
inline TiltingReport check_tilting(const TreeAlgebra& A, const std::vector<ProjComplex>& complexes) {
    const auto& t = A.tree();
    const int n = static_cast<int>(complexes.size());
    TiltingReport rep;
    std::vector<std::future<std::vector<std::map<int, std::size_t>>>> rows;
    for (int j = 0; j < n; ++j)
        rows.push_back(std::async(std::launch::async, [&, j] {
            std::vector<std::map<int, std::size_t>> row;
            for (int j2 = 0; j2 < n; ++j2)
                row.push_back(homotopy_hom_table(A, complexes[static_cast<std::size_t>(j)], complexes[static_cast<std::size_t>(j2)]));
            return row;
        }));
    for (int j = 0; j < n; ++j) {
        auto row = rows[static_cast<std::size_t>(j)].get();
        for (int j2 = 0; j2 < n; ++j2) rep.homs[{j, j2}] = row[static_cast<std::size_t>(j2)];
    }
    rep.hom_vanishing = true;
    for (const auto& [pair, table] : rep.homs)
        for (const auto& [i, dim] : table) {
            if (i != 0 && dim != 0)
                throw TiltingFailure(pair.first, pair.second, i,
                                     "Hom(C_" + std::to_string(pair.first) + ", C_" + std::to_string(pair.second) + "[" +
                                         std::to_string(i) + "]) has dimension " + std::to_string(dim));
            if (i == 0) rep.end_dim += dim;
        }
    std::vector<bool> seen(static_cast<std::size_t>(t.h0), false);
    for (const auto& C : complexes)
        for (const auto& term : C.terms)
            for (int x : term) seen[static_cast<std::size_t>(x)] = true;
    rep.generation = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    if (!rep.generation) throw TiltingFailure(-1, -1, 0, "some projective does not occur in any term");
    rep.expected_end_dim = static_cast<std::size_t>(t.h0) * static_cast<std::size_t>(t.h0 * t.multiplicity + 1);
    rep.end_dimension = rep.end_dim == rep.expected_end_dim;
    if (!rep.end_dimension)
        throw TiltingFailure(-1, -1, 0, "End has dimension " + std::to_string(rep.end_dim) + ", expected " + std::to_string(rep.expected_end_dim));
    return rep;
}

inline std::vector<ProjComplex> rickard_family(const TreeAlgebra& A) {
    std::vector<ProjComplex> out;
    for (int j = 0; j < A.vertex_count(); ++j) out.push_back(rickard_complex(A, j));
    return out;
}

inline TiltingReport check_tilting(const TreeAlgebra& A) { return check_tilting(A, rickard_family(A)); }

struct PerversityRow {
    int j = 0;
    int height = 0;
    int degree = 0;     // concentration degree r + hg of the associated complex
    int level = 0;      // i = r − hg
    int perversity = 0; // p(i) = i − 2r
    bool ok = false;
};

struct PerversityReport {
    std::vector<PerversityRow> rows;
    bool filtration_ok = false;
    bool ok() const {
        return filtration_ok && std::all_of(rows.begin(), rows.end(), [](const PerversityRow& r) { return r.ok; });
    }
};

/// For each S_j the complex degree r + hg(S_j) must equal −p(i) at the
/// filtration level i = r − hg(S_j); levels S_i = {S : hg(S) ≥ r − i} must
/// grow with i and exhaust the edges.
inline PerversityReport perversity_report(const PlanarBrauerTree& t) {
    PerversityReport rep;
    int min_level = t.r, max_level = t.r;
    for (int j = 0; j < t.h0; ++j) {
        PerversityRow row;
        row.j = j;
        row.height = t.height(j);
        row.degree = t.r + (j - t.branch_of(j).m);
        row.level = t.r - row.height;
        row.perversity = perversity(t, row.level);
        row.ok = row.degree == -row.perversity && row.degree == t.r + row.height;
        min_level = std::min(min_level, row.level);
        max_level = std::max(max_level, row.level);
        rep.rows.push_back(row);
    }
    rep.filtration_ok = true;
    std::size_t prev = 0;
    for (int i = min_level; i <= max_level; ++i) {
        std::size_t size = 0;
        for (const auto& row : rep.rows) size += row.height >= t.r - i;
        if (size < prev) rep.filtration_ok = false;
        prev = size;
    }
    if (prev != static_cast<std::size_t>(t.h0)) rep.filtration_ok = false;
    return rep;
}

} // namespace coxbrauer
