#pragma once

// Dense matrices over Z/m (m a prime or a prime power) and polynomials over
// the same rings. Entries are canonical representatives in [0, m).

#include <coxbrauer/error.hpp>
#include <coxbrauer/modular.hpp>

#include <algorithm>
#include <optional>
#include <vector>

namespace coxbrauer {

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<u64> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    u64& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    u64 operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](u64 x) { return x == 0; });
    }

    Matrix column(std::size_t c) const {
        Matrix v(rows, 1);
        for (std::size_t i = 0; i < rows; ++i) v(i, 0) = (*this)(i, c);
        return v;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

inline Matrix mat_reduce(Matrix m, u64 mod) {
    for (auto& x : m.a) x %= mod;
    return m;
}

inline Matrix mat_mul(const Matrix& x, const Matrix& y, u64 mod) {
    if (x.cols != y.rows) fail(ErrorCode::InvalidArgument, "matrix shape mismatch in product");
    Matrix out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const u64 v = x(i, k);
            if (!v) continue;
            for (std::size_t j = 0; j < y.cols; ++j) {
                const u64 w = y(k, j);
                if (w) out(i, j) = (out(i, j) + mulmod(v, w, mod)) % mod;
            }
        }
    return out;
}

inline Matrix mat_add(Matrix x, const Matrix& y, u64 mod) {
    if (x.rows != y.rows || x.cols != y.cols) fail(ErrorCode::InvalidArgument, "matrix shape mismatch in sum");
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] = (x.a[i] + y.a[i]) % mod;
    return x;
}

inline Matrix mat_scale(Matrix x, u64 s, u64 mod) {
    for (auto& v : x.a) v = mulmod(v, s % mod, mod);
    return x;
}

inline Matrix mat_sub(const Matrix& x, const Matrix& y, u64 mod) { return mat_add(x, mat_scale(y, mod - 1, mod), mod); }

/// Horizontal concatenation.
inline Matrix hconcat(const std::vector<Matrix>& parts) {
    if (parts.empty()) return {};
    std::size_t cols = 0;
    for (const auto& p : parts) cols += p.cols;
    Matrix out(parts.front().rows, cols);
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rows; ++i)
            for (std::size_t j = 0; j < p.cols; ++j) out(i, off + j) = p(i, j);
        off += p.cols;
    }
    return out;
}

// Polynomials: coefficient vectors, lowest degree first, over Z/m.
using Poly = std::vector<u64>;

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mul(const Poly& x, const Poly& y, u64 mod) {
    if (x.empty() || y.empty()) return {};
    Poly out(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] = (out[i + j] + mulmod(x[i], y[j], mod)) % mod;
    poly_trim(out);
    return out;
}

inline Poly poly_add(Poly x, const Poly& y, u64 mod) {
    if (x.size() < y.size()) x.resize(y.size(), 0);
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = (x[i] + y[i]) % mod;
    poly_trim(x);
    return x;
}

inline Poly poly_scale(Poly x, u64 s, u64 mod) {
    for (auto& c : x) c = mulmod(c, s % mod, mod);
    poly_trim(x);
    return x;
}

/// Remainder modulo a polynomial whose leading coefficient is a unit mod m.
inline Poly poly_rem(Poly x, Poly d, u64 mod) {
    poly_trim(x);
    poly_trim(d);
    if (d.empty()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
    auto lead_inv = invmod(d.back(), mod);
    if (!lead_inv) fail(ErrorCode::InvalidArgument, "polynomial divisor must have unit leading coefficient");
    while (x.size() >= d.size()) {
        const u64 c = mulmod(x.back(), *lead_inv, mod);
        const std::size_t shift = x.size() - d.size();
        for (std::size_t k = 0; k < d.size(); ++k) x[shift + k] = (x[shift + k] + mod - mulmod(c, d[k], mod)) % mod;
        poly_trim(x);
    }
    return x;
}

/// Quotient and remainder over a field F_p.
inline std::pair<Poly, Poly> poly_divmod(Poly x, Poly d, u64 p) {
    poly_trim(x);
    poly_trim(d);
    if (d.empty()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
    const u64 lead_inv = *invmod(d.back(), p);
    Poly q(x.size() >= d.size() ? x.size() - d.size() + 1 : 0, 0);
    while (x.size() >= d.size()) {
        const u64 c = mulmod(x.back(), lead_inv, p);
        const std::size_t shift = x.size() - d.size();
        q[shift] = c;
        for (std::size_t k = 0; k < d.size(); ++k) x[shift + k] = (x[shift + k] + p - mulmod(c, d[k], p)) % p;
        poly_trim(x);
    }
    poly_trim(q);
    return {q, x};
}

inline u64 poly_eval(const Poly& f, u64 x, u64 mod) {
    u64 v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = (mulmod(v, x, mod) + f[i]) % mod;
    return v;
}

/// f(M) by Horner's rule.
inline Matrix poly_eval_matrix(const Poly& f, const Matrix& M, u64 mod) {
    Matrix acc(M.rows, M.cols);
    for (std::size_t i = f.size(); i-- > 0;) {
        acc = mat_mul(acc, M, mod);
        for (std::size_t k = 0; k < M.rows; ++k) acc(k, k) = (acc(k, k) + f[i]) % mod;
    }
    return acc;
}

/// Extended gcd over F_p: returns (g, u, v) with u·x + v·y = g, g monic.
inline std::tuple<Poly, Poly, Poly> poly_xgcd(Poly x, Poly y, u64 p) {
    Poly r0 = x, r1 = y, s0{1}, s1{}, t0{}, t1{1};
    poly_trim(r0);
    poly_trim(r1);
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(r0, r1, p);
        auto neg = [&](const Poly& a) { return poly_scale(a, p - 1, p); };
        Poly s2 = poly_add(s0, neg(poly_mul(q, s1, p)), p);
        Poly t2 = poly_add(t0, neg(poly_mul(q, t1, p)), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.empty()) {
        const u64 inv = *invmod(r0.back(), p);
        r0 = poly_scale(r0, inv, p);
        s0 = poly_scale(s0, inv, p);
        t0 = poly_scale(t0, inv, p);
    }
    return {r0, s0, t0};
}

/// Characteristic polynomial det(T − M) over Z/m by Berkowitz's
/// division-free algorithm; monic of degree n.
inline Poly charpoly(const Matrix& M, u64 mod) {
    const std::size_t n = M.rows;
    if (M.cols != n) fail(ErrorCode::InvalidArgument, "characteristic polynomial needs a square matrix");
    // Coefficients highest degree first during the recursion.
    std::vector<u64> c{1};
    for (std::size_t k = 0; k < n; ++k) {
        // Leading principal (k+1)×(k+1) block: A = M[0..k), R = M[k][0..k), C = M[0..k)[k], a = M[k][k].
        const u64 a = M(k, k);
        std::vector<u64> t(k + 2, 0);
        t[0] = 1;
        t[1] = (mod - a) % mod;
        std::vector<u64> v(k);
        for (std::size_t i = 0; i < k; ++i) v[i] = M(i, k);
        for (std::size_t step = 0; step < k; ++step) {
            u64 rv = 0;
            for (std::size_t i = 0; i < k; ++i) rv = (rv + mulmod(M(k, i), v[i], mod)) % mod;
            t[step + 2] = (mod - rv) % mod;
            std::vector<u64> nv(k, 0);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) nv[i] = (nv[i] + mulmod(M(i, j), v[j], mod)) % mod;
            v = std::move(nv);
        }
        // Toeplitz product: new c has length k+2.
        std::vector<u64> nc(k + 2, 0);
        for (std::size_t i = 0; i < k + 2; ++i)
            for (std::size_t j = 0; j <= i && j < c.size(); ++j) nc[i] = (nc[i] + mulmod(t[i - j], c[j], mod)) % mod;
        c = std::move(nc);
    }
    Poly out(c.rbegin(), c.rend());
    return out;
}

namespace fp {

struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form over the prime field F_p.
inline Echelon rref(Matrix A, u64 p) {
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < A.cols && row < A.rows; ++col) {
        std::size_t piv = row;
        while (piv < A.rows && A(piv, col) == 0) ++piv;
        if (piv == A.rows) continue;
        if (piv != row)
            for (std::size_t j = 0; j < A.cols; ++j) std::swap(A(piv, j), A(row, j));
        const u64 inv = *invmod(A(row, col), p);
        for (std::size_t j = col; j < A.cols; ++j) A(row, j) = mulmod(A(row, j), inv, p);
        for (std::size_t i = 0; i < A.rows; ++i) {
            if (i == row || A(i, col) == 0) continue;
            const u64 f = A(i, col);
            for (std::size_t j = col; j < A.cols; ++j) A(i, j) = (A(i, j) + p - mulmod(f, A(row, j), p)) % p;
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.reduced = std::move(A);
    return e;
}

inline std::size_t rank(const Matrix& A, u64 p) { return rref(mat_reduce(A, p), p).pivots.size(); }

/// Basis of the right kernel {x : A x = 0}, as columns.
inline Matrix kernel(const Matrix& A, u64 p) {
    auto e = rref(mat_reduce(A, p), p);
    std::vector<bool> is_pivot(A.cols, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    Matrix K(A.cols, A.cols - e.pivots.size());
    std::size_t k = 0;
    for (std::size_t free = 0; free < A.cols; ++free) {
        if (is_pivot[free]) continue;
        K(free, k) = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) K(e.pivots[r], k) = (p - e.reduced(r, free)) % p;
        ++k;
    }
    return K;
}

inline std::optional<Matrix> inverse(const Matrix& A, u64 p) {
    const std::size_t n = A.rows;
    if (A.cols != n) return std::nullopt;
    Matrix aug = hconcat({mat_reduce(A, p), Matrix::identity(n)});
    auto e = rref(aug, p);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

/// One solution of A x = b, if any.
inline std::optional<Matrix> solve(const Matrix& A, const Matrix& b, u64 p) {
    auto e = rref(hconcat({mat_reduce(A, p), mat_reduce(b, p)}), p);
    Matrix x(A.cols, b.cols);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] >= A.cols) return std::nullopt;
        for (std::size_t j = 0; j < b.cols; ++j) x(e.pivots[r], j) = e.reduced(r, A.cols + j);
    }
    return x;
}

} // namespace fp

} // namespace coxbrauer
