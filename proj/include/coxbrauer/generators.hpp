#pragma once

// Hand-rolled random generators: valid series data, HLM trees, and paddings
// of complexes by contractible summands scrambled by elementary automorphisms.

#include <coxbrauer/brauer_tree.hpp>
#include <coxbrauer/homotopy.hpp>

#include <algorithm>
#include <random>

namespace coxbrauer::gen {

/// Random partition of [0, h0) into at most max_branches consecutive intervals.
inline SeriesDatum random_series(std::mt19937_64& rng, int h0, int max_branches) {
    const int k = 1 + static_cast<int>(rng() % static_cast<u64>(std::min(h0, max_branches)));
    std::vector<int> cuts;
    std::vector<int> pool;
    for (int c = 1; c < h0; ++c) pool.push_back(c);
    std::shuffle(pool.begin(), pool.end(), rng);
    cuts.assign(pool.begin(), pool.begin() + (k - 1));
    std::sort(cuts.begin(), cuts.end());
    SeriesDatum s{h0, {}};
    int start = 0;
    i64 tag = 0;
    for (int c : cuts) {
        s.branches.push_back({tag++, start, c - 1});
        start = c;
    }
    s.branches.push_back({tag, start, h0 - 1});
    std::shuffle(s.branches.begin(), s.branches.end(), rng);
    return s;
}

inline PlanarBrauerTree random_hlm_tree(std::mt19937_64& rng, int max_h0, int max_branches, int max_mu) {
    const int h0 = 1 + static_cast<int>(rng() % static_cast<u64>(max_h0));
    const int mu = 1 + static_cast<int>(rng() % static_cast<u64>(max_mu));
    const int r = static_cast<int>(rng() % 3);
    return build_hlm_tree(random_series(rng, h0, max_branches), mu, r);
}


inline Elem random_hom(std::mt19937_64& rng, const TreeAlgebra& A, int to, int from) {
    Elem e = A.zero();
    for (int b : A.paths(to, from)) e[static_cast<std::size_t>(b)] = rng() % A.field();
    return e;
}

inline ProjComplex random_padding(std::mt19937_64& rng, const TreeAlgebra& A, ProjComplex C, int pads, int mixes) {
    const int lo = C.empty() ? 0 : C.lo, hi = C.empty() ? 0 : C.hi();
    for (int n = 0; n < pads; ++n) {
        const int x = static_cast<int>(rng() % static_cast<u64>(A.vertex_count()));
        const int deg = lo - 1 + static_cast<int>(rng() % static_cast<u64>(hi - lo + 2));
        C = pad_contractible(A, C, x, deg);
    }
    for (int n = 0; n < mixes; ++n) {
        const int deg = C.lo + static_cast<int>(rng() % static_cast<u64>(C.terms.size()));
        const auto& term = C.term(deg);
        if (term.size() < 2) continue;
        const std::size_t t = rng() % term.size();
        std::size_t s = rng() % term.size();
        if (s == t) s = (s + 1) % term.size();
        C = elementary_conjugate(A, C, deg, t, s, random_hom(rng, A, term[t], term[s]));
    }
    return C;
}

} // namespace coxbrauer::gen
