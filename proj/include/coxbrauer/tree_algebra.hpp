#pragma once

// Brauer tree algebras as quivers with relations over F_p, with an explicit
// path basis, projective modules, Loewy series, Hom spaces and Ext^1.
//
// Modules are right modules. A path x·y means "x, then y"; the basis element
// e_a·p·e_b is a path from a to b. At a node v with anticlockwise edge order
// c_0, …, c_{s−1} and multiplicity μ there is one arrow c_k → c_{k−1} per
// edge, and the cycle of length sμ through an edge is its socle element.

#include <coxbrauer/brauer_tree.hpp>
#include <coxbrauer/error.hpp>
#include <coxbrauer/linalg.hpp>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace coxbrauer {

struct BasisElement {
    enum class Kind { Idempotent, Path, Socle };
    Kind kind = Kind::Idempotent;
    int start = 0;
    int end = 0;
    int node = -1;   // tree vertex walked around (paths only)
    int length = 0;  // number of arrows (socle: the cycle length)
};

struct Arrow {
    int from = 0;
    int to = 0;
    int node = 0;
    int element = 0; // basis index of the arrow as an algebra element
};

/// Dense element of the algebra: coordinates on the path basis.
using Elem = std::vector<u64>;

class TreeAlgebra {
public:
    TreeAlgebra(PlanarBrauerTree tree, u64 p) : tree_(std::move(tree)), p_(p) {
        if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "field size must be prime, got " + std::to_string(p));
        check_tree(tree_);
        build();
    }

    const PlanarBrauerTree& tree() const { return tree_; }
    u64 field() const { return p_; }
    int vertex_count() const { return tree_.h0; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    /// Cycle length s_v·μ_v at a tree node.
    int cycle_length(int v) const { return tree_.degree(v) * tree_.vertex_multiplicity(v); }

    /// Nodes carrying arrows: cycle length > 1, or the exceptional node of a
    /// single edge with μ = 1 (whose algebra is k[x]/(x²)).
    bool active(int v) const {
        if (cycle_length(v) > 1) return true;
        return v == tree_.exceptional() && tree_.h0 == 1 && tree_.multiplicity == 1;
    }

    int idempotent(int a) const { return idem_[static_cast<std::size_t>(a)]; }
    int socle(int a) const { return socle_[static_cast<std::size_t>(a)]; }

    /// Basis index of the product of two basis elements, or −1 for zero.
    int mul_basis(int x, int y) const { return table_[static_cast<std::size_t>(x) * dim() + static_cast<std::size_t>(y)]; }

    Elem zero() const { return Elem(dim(), 0); }
    Elem unit_vector(int i) const {
        Elem e = zero();
        e[static_cast<std::size_t>(i)] = 1;
        return e;
    }

    Elem mul(const Elem& x, const Elem& y) const {
        Elem out = zero();
        for (std::size_t i = 0; i < dim(); ++i) {
            if (!x[i]) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (!y[j]) continue;
                const int k = mul_basis(static_cast<int>(i), static_cast<int>(j));
                if (k >= 0) out[static_cast<std::size_t>(k)] = (out[static_cast<std::size_t>(k)] + mulmod(x[i], y[j], p_)) % p_;
            }
        }
        return out;
    }

    Elem add(Elem x, const Elem& y) const {
        for (std::size_t i = 0; i < dim(); ++i) x[i] = (x[i] + y[i]) % p_;
        return x;
    }

    Elem scale(Elem x, u64 s) const {
        for (auto& v : x) v = mulmod(v, s % p_, p_);
        return x;
    }

    bool is_zero(const Elem& x) const {
        return std::all_of(x.begin(), x.end(), [](u64 v) { return v == 0; });
    }

    /// Basis indices of e_a·A·e_b (paths from a to b).
    std::vector<int> paths(int a, int b) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < dim(); ++i)
            if (basis_[i].start == a && basis_[i].end == b) out.push_back(static_cast<int>(i));
        return out;
    }

    /// Basis indices of e_a·A.
    std::vector<int> paths_from(int a) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < dim(); ++i)
            if (basis_[i].start == a) out.push_back(static_cast<int>(i));
        return out;
    }

    std::size_t projective_dim(int a) const { return paths_from(a).size(); }

    /// dim Hom(P_i, P_j) = dim e_j·A·e_i, for all i, j.
    IntMatrix hom_dimensions() const {
        const auto n = static_cast<std::size_t>(vertex_count());
        IntMatrix C(n, std::vector<i64>(n, 0));
        for (const auto& b : basis_) C[static_cast<std::size_t>(b.end)][static_cast<std::size_t>(b.start)] += 1;
        return C;
    }

    /// Number of arrows i → j, which is dim Ext^1(S_i, S_j).
    int ext1(int i, int j) const {
        int n = 0;
        for (const auto& a : arrows_) n += a.from == i && a.to == j;
        return n;
    }

    std::vector<std::vector<int>> ext1_matrix() const {
        const auto n = static_cast<std::size_t>(vertex_count());
        std::vector<std::vector<int>> E(n, std::vector<int>(n, 0));
        for (const auto& a : arrows_) ++E[static_cast<std::size_t>(a.from)][static_cast<std::size_t>(a.to)];
        return E;
    }

    /// Checks (xy)z = x(yz) on all basis triples.
    bool associative() const {
        const int n = static_cast<int>(dim());
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const int xy = mul_basis(x, y);
                for (int z = 0; z < n; ++z) {
                    const int yz = mul_basis(y, z);
                    const int l = xy < 0 ? -1 : mul_basis(xy, z);
                    const int r = yz < 0 ? -1 : mul_basis(x, yz);
                    if (l != r) return false;
                }
            }
        return true;
    }

    std::string describe(int i) const {
        const auto& b = basis_[static_cast<std::size_t>(i)];
        switch (b.kind) {
        case BasisElement::Kind::Idempotent: return "e" + std::to_string(b.start);
        case BasisElement::Kind::Socle: return "soc" + std::to_string(b.start);
        case BasisElement::Kind::Path:
            return "p(" + std::to_string(b.start) + "->" + std::to_string(b.end) + "@" + tree_.vertex_name(b.node) + "," +
                   std::to_string(b.length) + ")";
        }
        return "?";
    }

private:
    // Edge reached from a after t predecessor steps around v.
    int walk(int v, int a, int t) const {
        const auto order = tree_.cyclic_order(v);
        const int s = static_cast<int>(order.size());
        const int k = static_cast<int>(std::find(order.begin(), order.end(), a) - order.begin());
        return order[static_cast<std::size_t>(((k - t) % s + s) % s)];
    }

    void build() {
        const int n = tree_.h0;
        idem_.assign(static_cast<std::size_t>(n), -1);
        socle_.assign(static_cast<std::size_t>(n), -1);
        std::map<std::tuple<int, int, int>, int> path_index;
        for (int a = 0; a < n; ++a) {
            idem_[static_cast<std::size_t>(a)] = static_cast<int>(basis_.size());
            basis_.push_back({BasisElement::Kind::Idempotent, a, a, -1, 0});
            auto [u, w] = tree_.endpoints(a);
            int socle_len = 0;
            for (int v : {std::min(u, w), std::max(u, w)}) {
                if (!active(v)) continue;
                const int L = cycle_length(v);
                socle_len = L;
                for (int t = 1; t < L; ++t) {
                    path_index[{a, v, t}] = static_cast<int>(basis_.size());
                    basis_.push_back({BasisElement::Kind::Path, a, walk(v, a, t), v, t});
                }
            }
            socle_[static_cast<std::size_t>(a)] = static_cast<int>(basis_.size());
            basis_.push_back({BasisElement::Kind::Socle, a, a, -1, socle_len});
        }
        // Arrows: length-one paths, or the socle when the cycle has length one.
        for (int a = 0; a < n; ++a) {
            auto [u, w] = tree_.endpoints(a);
            for (int v : {std::min(u, w), std::max(u, w)}) {
                if (!active(v)) continue;
                const int elem = cycle_length(v) == 1 ? socle(a) : path_index.at({a, v, 1});
                arrows_.push_back({a, walk(v, a, 1), v, elem});
            }
        }
        const std::size_t d = basis_.size();
        table_.assign(d * d, -1);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const auto& x = basis_[i];
                const auto& y = basis_[j];
                if (x.end != y.start) continue;
                int r = -1;
                if (x.kind == BasisElement::Kind::Idempotent) r = static_cast<int>(j);
                else if (y.kind == BasisElement::Kind::Idempotent) r = static_cast<int>(i);
                else if (x.kind == BasisElement::Kind::Path && y.kind == BasisElement::Kind::Path && x.node == y.node) {
                    const int t = x.length + y.length;
                    const int L = cycle_length(x.node);
                    if (t < L) r = path_index.at({x.start, x.node, t});
                    else if (t == L) r = socle(x.start);
                }
                table_[i * d + j] = r;
            }
        }
    }

    PlanarBrauerTree tree_;
    u64 p_;
    std::vector<BasisElement> basis_;
    std::vector<int> idem_, socle_;
    std::vector<Arrow> arrows_;
    std::vector<int> table_;
};

inline TreeAlgebra from_tree(const PlanarBrauerTree& tree, u64 p, bool require_roots_of_unity = false) {
    if (require_roots_of_unity && (p - 1) % static_cast<u64>(tree.h0) != 0)
        throw Error(ErrorCode::FieldTooSmall, "F_" + std::to_string(p) + " lacks primitive " + std::to_string(tree.h0) + "-th roots of unity");
    return TreeAlgebra(tree, p);
}

/// Σ_e (2 + Σ_{v ∋ e} (s_v μ_v − 1)).
inline std::size_t closed_form_dimension(const PlanarBrauerTree& t) {
    std::size_t total = 0;
    for (int e = 0; e < t.h0; ++e) {
        auto [u, v] = t.endpoints(e);
        total += 2;
        for (int w : {u, v}) total += static_cast<std::size_t>(t.degree(w) * t.vertex_multiplicity(w) - 1);
    }
    return total;
}

/// Right module given by a vertex-graded basis and one action matrix per
/// arrow (acting on column vectors: m ↦ m·α).
struct AlgModule {
    std::vector<int> vertex;     // vertex of each basis vector
    std::vector<Matrix> action;  // indexed like TreeAlgebra::arrows()

    std::size_t dim() const { return vertex.size(); }
};

/// Projective P_a = e_a·A with its path basis.
inline AlgModule projective(const TreeAlgebra& A, int a) {
    if (a < 0 || a >= A.vertex_count()) fail(ErrorCode::InvalidArgument, "projective index out of range");
    const auto basis = A.paths_from(a);
    std::map<int, std::size_t> pos;
    for (std::size_t k = 0; k < basis.size(); ++k) pos[basis[k]] = k;
    AlgModule M;
    for (int b : basis) M.vertex.push_back(A.basis()[static_cast<std::size_t>(b)].end);
    for (const auto& arrow : A.arrows()) {
        Matrix act(basis.size(), basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const int r = A.mul_basis(basis[k], arrow.element);
            if (r >= 0) act(pos.at(r), k) = 1;
        }
        M.action.push_back(act);
    }
    return M;
}

/// Simple module S_a.
inline AlgModule simple_module(const TreeAlgebra& A, int a) {
    AlgModule M;
    M.vertex = {a};
    for (std::size_t k = 0; k < A.arrows().size(); ++k) M.action.push_back(Matrix(1, 1));
    return M;
}

namespace detail {

// Matrix of the action of a basis element (a product of arrows) on M.
inline Matrix element_action(const TreeAlgebra& A, const AlgModule& M, int elem) {
    const auto& b = A.basis()[static_cast<std::size_t>(elem)];
    const u64 p = A.field();
    const std::size_t n = M.dim();
    Matrix act = Matrix::identity(n);
    auto restrict_to = [&](int v) {
        Matrix P(n, n);
        for (std::size_t i = 0; i < n; ++i)
            if (M.vertex[i] == v) P(i, i) = 1;
        return P;
    };
    if (b.kind == BasisElement::Kind::Idempotent) return restrict_to(b.start);
    act = restrict_to(b.start);
    int cur = b.start;
    int node = b.node;
    int steps = b.length;
    if (b.kind == BasisElement::Kind::Socle) {
        auto [u, w] = A.tree().endpoints(b.start);
        node = A.active(std::min(u, w)) ? std::min(u, w) : std::max(u, w);
        steps = A.cycle_length(node);
    }
    for (int s = 0; s < steps; ++s) {
        std::size_t k = 0;
        while (k < A.arrows().size() && !(A.arrows()[k].from == cur && A.arrows()[k].node == node)) ++k;
        act = mat_mul(M.action[k], act, p);
        cur = A.arrows()[k].to;
    }
    return act;
}

} // namespace detail

/// Checks that the action matrices respect the grading and all relations.
inline bool verify_module(const TreeAlgebra& A, const AlgModule& M) {
    const u64 p = A.field();
    const auto& arrows = A.arrows();
    if (M.action.size() != arrows.size()) return false;
    for (std::size_t k = 0; k < arrows.size(); ++k) {
        const auto& act = M.action[k];
        if (act.rows != M.dim() || act.cols != M.dim()) return false;
        for (std::size_t i = 0; i < M.dim(); ++i)
            for (std::size_t j = 0; j < M.dim(); ++j)
                if (act(i, j) && (M.vertex[j] != arrows[k].from || M.vertex[i] != arrows[k].to)) return false;
    }
    // Mixed compositions vanish.
    for (std::size_t x = 0; x < arrows.size(); ++x)
        for (std::size_t y = 0; y < arrows.size(); ++y)
            if (arrows[x].to == arrows[y].from && arrows[x].node != arrows[y].node &&
                !mat_mul(M.action[y], M.action[x], p).is_zero())
                return false;
    // The two socle cycles agree, and a cycle followed by an arrow is zero.
    for (int a = 0; a < A.vertex_count(); ++a) {
        auto [u, w] = A.tree().endpoints(a);
        std::vector<Matrix> cycles;
        for (int v : {u, w}) {
            if (!A.active(v)) continue;
            Matrix act = Matrix::identity(M.dim());
            int cur = a;
            for (int s = 0; s < A.cycle_length(v); ++s) {
                std::size_t k = 0;
                while (!(arrows[k].from == cur && arrows[k].node == v)) ++k;
                act = mat_mul(M.action[k], act, p);
                cur = arrows[k].to;
            }
            Matrix proj(M.dim(), M.dim());
            for (std::size_t i = 0; i < M.dim(); ++i)
                if (M.vertex[i] == a) proj(i, i) = 1;
            act = mat_mul(act, proj, p);
            for (std::size_t k = 0; k < arrows.size(); ++k)
                if (arrows[k].from == a && !mat_mul(M.action[k], act, p).is_zero()) return false;
            cycles.push_back(act);
        }
        if (cycles.size() == 2 && cycles[0] != cycles[1]) return false;
    }
    return true;
}

/// Composition factors per vertex of each radical layer, top first.
inline std::vector<std::vector<int>> loewy_layers(const TreeAlgebra& A, const AlgModule& M) {
    const u64 p = A.field();
    const auto n = static_cast<std::size_t>(A.vertex_count());
    std::vector<std::vector<int>> layers;
    Matrix current = Matrix::identity(M.dim()); // columns span rad^k M
    auto dims_by_vertex = [&](const Matrix& span) {
        // Subspaces here are graded; count independent columns supported at each vertex.
        std::vector<int> d(n, 0);
        for (std::size_t v = 0; v < n; ++v) {
            Matrix part(M.dim(), span.cols);
            for (std::size_t i = 0; i < M.dim(); ++i)
                if (M.vertex[i] == static_cast<int>(v))
                    for (std::size_t j = 0; j < span.cols; ++j) part(i, j) = span(i, j);
            d[v] = static_cast<int>(fp::rank(part, p));
        }
        return d;
    };
    auto prev = dims_by_vertex(current);
    while (true) {
        std::vector<Matrix> images;
        for (const auto& act : M.action) images.push_back(mat_mul(act, current, p));
        Matrix next = images.empty() ? Matrix(M.dim(), 0) : hconcat(images);
        // Keep a column basis of the image.
        std::vector<Matrix> cols;
        Matrix t(next.cols, next.rows);
        for (std::size_t i = 0; i < next.rows; ++i)
            for (std::size_t j = 0; j < next.cols; ++j) t(j, i) = next(i, j);
        auto et = fp::rref(t, p);
        for (std::size_t r = 0; r < et.pivots.size(); ++r) {
            Matrix c(M.dim(), 1);
            for (std::size_t i = 0; i < M.dim(); ++i) c(i, 0) = et.reduced(r, i);
            cols.push_back(c);
        }
        Matrix span = cols.empty() ? Matrix(M.dim(), 0) : hconcat(cols);
        auto d = dims_by_vertex(span);
        std::vector<int> layer(n);
        bool nonzero = false;
        for (std::size_t v = 0; v < n; ++v) {
            layer[v] = prev[v] - d[v];
            nonzero |= layer[v] != 0;
        }
        if (!nonzero) break;
        layers.push_back(layer);
        prev = d;
        current = span;
        if (span.cols == 0) break;
    }
    return layers;
}

/// Dimension vector of the socle {m : m·α = 0 for every arrow α}.
inline std::vector<int> socle_dimensions(const TreeAlgebra& A, const AlgModule& M) {
    const u64 p = A.field();
    std::vector<int> d(static_cast<std::size_t>(A.vertex_count()), 0);
    Matrix stacked(0, M.dim());
    for (const auto& act : M.action) {
        Matrix s(stacked.rows + act.rows, M.dim());
        std::copy(stacked.a.begin(), stacked.a.end(), s.a.begin());
        std::copy(act.a.begin(), act.a.end(), s.a.begin() + static_cast<std::ptrdiff_t>(stacked.a.size()));
        stacked = s;
    }
    Matrix K = stacked.rows ? fp::kernel(stacked, p) : Matrix::identity(M.dim());
    // The kernel is graded: split by vertex.
    for (int v = 0; v < A.vertex_count(); ++v) {
        Matrix part(M.dim(), K.cols);
        for (std::size_t i = 0; i < M.dim(); ++i)
            if (M.vertex[i] == v)
                for (std::size_t j = 0; j < K.cols; ++j) part(i, j) = K(i, j);
        d[static_cast<std::size_t>(v)] = static_cast<int>(fp::rank(part, p));
    }
    return d;
}

/// Basis of Hom(P_i, P_j) ≅ e_j·A·e_i: the map attached to a path x from j
/// to i is m ↦ x·m.
inline std::vector<int> hom_space(const TreeAlgebra& A, int i, int j) { return A.paths(j, i); }

inline bool is_star(const PlanarBrauerTree& t) {
    return std::all_of(t.branches.begin(), t.branches.end(), [](const Branch& b) { return b.m == b.M; });
}

/// Uniserial module with top k_M, then k_{M−1}, …, socle k_m, over a star algebra.
inline AlgModule uniserial_N(const TreeAlgebra& A, const Branch& branch) {
    if (!is_star(A.tree())) throw Error(ErrorCode::NotStar, "uniserial modules N are defined over star algebras");
    const int h0 = A.vertex_count();
    if (branch.m < 0 || branch.M >= h0 || branch.m > branch.M) fail(ErrorCode::InvalidArgument, "branch outside [0, h0)");
    const int len = branch.M - branch.m + 1;
    if (len > A.cycle_length(A.tree().exceptional()))
        fail(ErrorCode::InvalidArgument, "branch longer than the exceptional cycle");
    AlgModule N;
    for (int t = 0; t < len; ++t) N.vertex.push_back(branch.M - t);
    for (const auto& arrow : A.arrows()) {
        Matrix act(static_cast<std::size_t>(len), static_cast<std::size_t>(len));
        for (int t = 0; t + 1 < len; ++t)
            if (arrow.from == branch.M - t && arrow.to == branch.M - t - 1) act(static_cast<std::size_t>(t + 1), static_cast<std::size_t>(t)) = 1;
        N.action.push_back(act);
    }
    return N;
}

} // namespace coxbrauer
