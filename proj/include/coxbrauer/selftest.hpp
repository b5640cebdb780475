#pragma once

// Acceptance fixtures 1–12 as a runnable suite, shared by the acceptance test
// binary and `coxbrauer selftest`.

#include <coxbrauer/brauer_tree.hpp>
#include <coxbrauer/ell_arith.hpp>
#include <coxbrauer/generators.hpp>
#include <coxbrauer/homotopy.hpp>
#include <coxbrauer/oracle.hpp>
#include <coxbrauer/root_data.hpp>
#include <coxbrauer/tree_algebra.hpp>
#include <coxbrauer/tree_json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace coxbrauer {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double budget = 0; // seconds; 0 = unbounded
};

struct SelftestOptions {
    std::string filter;                                // substring of the name, or the number
    std::optional<std::vector<CoxeterDatum>> table;    // replaces the built-in degree table
    std::optional<std::string> golden_dot;             // expected ²G₂ DOT rendering
};

namespace selftest_detail {

struct Outcome {
    bool pass = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

inline PlanarBrauerTree ree_fixture() { return g2ree_tree(validate_ell(coxeter_datum({Family::G2Ree, 2}), 27, 19)); }

inline std::vector<PlanarBrauerTree> line_trees() {
    std::vector<PlanarBrauerTree> out;
    for (int h0 = 2; h0 <= 4; ++h0)
        for (int mu = 1; mu <= 3; ++mu) out.push_back(line_tree(h0, mu, 1));
    return out;
}

inline std::vector<PlanarBrauerTree> random_trees() {
    std::mt19937_64 rng(8);
    std::vector<PlanarBrauerTree> out;
    for (int n = 0; n < 100; ++n) out.push_back(gen::random_hlm_tree(rng, 6, 4, 3));
    return out;
}

inline std::string tree_tag(const PlanarBrauerTree& t) {
    return "h0=" + std::to_string(t.h0) + " mu=" + std::to_string(t.multiplicity) + " branches=" + std::to_string(t.branches.size());
}

inline Outcome coxeter_tables(const SelftestOptions& opt) {
    Outcome o;
    struct Row {
        const char* name;
        int rank, h, h0;
    };
    const Row rows[] = {
        {"A", 5, 6, 6},     {"B", 4, 8, 8},    {"C", 3, 6, 6},    {"D", 5, 8, 8},    {"E6", 0, 12, 12}, {"E7", 0, 18, 18},
        {"E8", 0, 30, 30},  {"F4", 0, 12, 12}, {"G2", 0, 6, 6},   {"2A", 4, 10, 5},  {"2A", 5, 10, 5},  {"2D", 5, 10, 5},
        {"3D4", 0, 12, 4},  {"2E6", 0, 18, 9}, {"2B2", 0, 8, 4},  {"2F4", 0, 24, 12}, {"2G2", 0, 12, 6},
    };
    const auto table = opt.table ? *opt.table : builtin_table();
    for (const auto& row : rows) {
        const auto type = parse_type(row.name, row.rank);
        auto it = std::find_if(table.begin(), table.end(), [&](const CoxeterDatum& c) { return c.type.name() == type.name(); });
        if (it == table.end()) {
            o.expect(false, "type " + type.name() + " missing from table");
            continue;
        }
        o.expect(it->h == row.h && it->h0 == row.h0,
                 type.name() + ": h=" + std::to_string(it->h) + " h0=" + std::to_string(it->h0) + ", expected " + std::to_string(row.h) + "/" +
                     std::to_string(row.h0));
    }
    const auto check = check_tables(table);
    o.expect(check.fingerprint_ok, "table checksum mismatch");
    o.expect(check.failures.empty(), check.failures.empty() ? "" : check.failures.front());
    auto corrupted = builtin_table();
    corrupted[3].degrees[0] += 1;
    o.expect(!check_tables(corrupted).ok(), "corrupted table was not rejected");
    return o;
}

inline Outcome torus_orders(const SelftestOptions&) {
    Outcome o;
    const CycloPoly b2{{{1, 0}, {0, -1}, {1, 0}}, 2};
    const CycloPoly g2{{{1, 0}, {0, -1}, {1, 0}}, 3};
    const CycloPoly f4{{{1, 0}, {0, -1}, {1, 0}, {0, -1}, {1, 0}}, 2};
    auto got = torus_order_poly(coxeter_datum({Family::B2Suzuki, 2}));
    o.expect(got == b2, "2B2 torus " + got.str());
    got = torus_order_poly(coxeter_datum({Family::G2Ree, 2}));
    o.expect(got == g2, "2G2 torus " + got.str());
    got = torus_order_poly(coxeter_datum({Family::F4Ree, 4}));
    o.expect(got == f4, "2F4 torus " + got.str());
    return o;
}

inline Outcome regimes(const SelftestOptions&) {
    Outcome o;
    auto check = [&](const CoxeterDatum& c, u64 qsq, u64 ell, std::vector<u64> expected) {
        auto ctx = validate_ell(c, qsq, ell);
        auto table = eigenvalue_table(ctx);
        o.expect(table == expected, c.type.name() + " eigenvalue table differs");
        std::set<u64> distinct(table.begin(), table.end());
        o.expect(distinct.size() == static_cast<std::size_t>(c.h0), c.type.name() + ": eigenvalues not distinct");
        for (u64 x : table) o.expect(powmod(x, static_cast<u64>(c.h0), ell) == 1, c.type.name() + ": eigenvalue is not an h0-th root of unity");
    };
    check(coxeter_datum({Family::A, 2}), 2, 7, {1, 2, 4});
    check(coxeter_datum({Family::G2Ree, 2}), 27, 19, {1, 8, 7, 18, 11, 12});
    return o;
}

inline Outcome hensel(const SelftestOptions&) {
    Outcome o;
    const auto x = hensel_root(TruncatedPadic::make(1, 7, 2), 3, 2);
    std::vector<u64> lifts;
    for (u64 y = 0; y < 49; ++y)
        if (y % 7 == 2 && powmod(y, 3, 49) == 1) lifts.push_back(y);
    o.expect(x.value == 30, "root is " + std::to_string(x.value) + ", expected 30");
    o.expect(lifts == std::vector<u64>{30}, "exhaustive search disagrees");
    std::mt19937_64 rng(20240611);
    const u64 primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    for (int trial = 0; trial < 50; ++trial) {
        const u64 ell = primes[rng() % 10];
        u64 e = 1 + rng() % 12;
        while (e % ell == 0) ++e;
        const int high = 2 + static_cast<int>(rng() % 4), low = 1 + static_cast<int>(rng() % static_cast<u64>(high - 1));
        const u64 seed = 1 + rng() % (ell - 1);
        const u64 mod = TruncatedPadic::modulus_of(ell, high);
        const u64 a = (powmod(seed, e, ell) + ell * (rng() % (mod / ell))) % mod;
        const auto hi = hensel_root(TruncatedPadic{a, ell, high}, e, seed);
        const auto lo = hensel_root(TruncatedPadic{a, ell, high}.truncated(low), e, seed);
        o.expect(hi.truncated(low) == lo && powmod(hi.value, e, mod) == a, "precision tower inconsistent at trial " + std::to_string(trial));
    }
    return o;
}

inline Outcome ree_tree(const SelftestOptions& opt) {
    Outcome o;
    const auto t = ree_fixture();
    o.expect(t.h0 == 6 && t.vertices.size() == 6, "expected 6 non-exceptional vertices");
    o.expect(t.multiplicity == 3, "exceptional multiplicity " + std::to_string(t.multiplicity));
    int long_branches = 0, leaves = 0;
    for (const auto& b : t.branches) {
        if (b.length() == 2) ++long_branches;
        if (b.length() == 1) ++leaves;
    }
    o.expect(long_branches == 1 && leaves == 4, "branch lengths differ from the expected shape");
    o.expect(t.vertex_name(0) == "St" && t.vertex_name(1) == "1" && t.endpoints(1) == std::make_pair(0, 1), "long branch is not exc--St--1");
    o.expect(t.cyclic_order(t.exceptional()) == successor_rule_order(t.branches, t.h0), "cyclic order violates the successor rule");
    std::vector<std::string> names;
    for (int e : t.cyclic_order(t.exceptional())) names.push_back(t.vertex_name(e));
    o.expect(names == std::vector<std::string>{"St", "2G2[i]", "2G2[xi]", "2G2[xibar]", "2G2[-i]"}, "anticlockwise order differs");
    const auto dot = to_dot(t);
    o.expect(dot == to_dot(ree_fixture()), "DOT output is not deterministic");
    if (opt.golden_dot) o.expect(dot == *opt.golden_dot, "DOT output differs from the golden file");
    return o;
}

inline Outcome star_oracle(const SelftestOptions&) {
    Outcome o;
    for (auto [d, e, n] : {std::tuple<u64, int, u64>{7, 3, 2}, {7, 3, 4}, {49, 3, 18}}) {
        const auto rep = verify_star(build_star_tree(d, e, n), MetacyclicGroup::make(d, e, n));
        o.expect(rep.match, "verify_star failed");
    }
    const auto D = brute_decomposition_matrix(MetacyclicGroup::make(7, 3, 2)).rows;
    o.expect(D == std::vector<std::vector<int>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 1, 1}}, "(7,3,2) decomposition matrix differs");
    bool negative = false;
    try {
        verify_star(build_star_tree(7, 3, 2), MetacyclicGroup::make(7, 3, 4));
    } catch (const Mismatch&) {
        negative = true;
    }
    o.expect(negative, "negative control (tree n=2 against group n=4) was not rejected");
    return o;
}

inline Outcome algebra_dimensions(const SelftestOptions&) {
    Outcome o;
    const auto t = build_star_tree(7, 3, 2);
    const auto A = from_tree(t, 7);
    o.expect(A.dim() == 21, "dim is " + std::to_string(A.dim()));
    const IntMatrix expected{{3, 2, 2}, {2, 3, 2}, {2, 2, 3}};
    o.expect(cartan_matrix(decomposition_matrix(t)) == expected, "DᵀD differs");
    o.expect(A.hom_dimensions() == expected, "hom_space grid differs");
    return o;
}

inline std::vector<std::vector<int>> successor_relation(const PlanarBrauerTree& t) {
    const auto n = static_cast<std::size_t>(t.h0);
    std::vector<std::vector<int>> E(n, std::vector<int>(n, 0));
    for (int v = 0; v <= t.h0; ++v) {
        const auto order = t.cyclic_order(v);
        // A lone edge at a node only carries a loop at a multiple exceptional
        // node, or when the whole tree is one edge.
        if (order.size() < 2 && !(v == t.exceptional() && (t.multiplicity > 1 || t.h0 == 1))) continue;
        for (int e : order) ++E[static_cast<std::size_t>(t.successor(v, e))][static_cast<std::size_t>(e)];
    }
    return E;
}

inline Outcome ext_adjacency(const SelftestOptions&) {
    Outcome o;
    const auto star = from_tree(build_star_tree(7, 3, 2), 7);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            o.expect((star.ext1(i, j) != 0) == (i == (j + 1) % 3), "star Ext(k_" + std::to_string(i) + ", k_" + std::to_string(j) + ")");
    for (const auto& t : random_trees()) o.expect(from_tree(t, 13).ext1_matrix() == successor_relation(t), "Ext quiver differs for " + tree_tag(t));
    return o;
}

inline CharacterVector rickard_euler_target(const PlanarBrauerTree& t, int j) {
    CharacterVector c(static_cast<std::size_t>(t.h0 + 1), 0);
    c.back() = 1;
    c[static_cast<std::size_t>(j)] += (j - t.branch_of(j).m) % 2 == 0 ? 1 : -1;
    return c;
}

inline Outcome rickard(const SelftestOptions&) {
    Outcome o;
    for (const auto& t : line_trees()) {
        const auto A = from_tree(t, 13);
        for (int j = 0; j < t.h0; ++j) {
            const auto C = rickard_complex(A, j);
            const std::string tag = tree_tag(t) + " j=" + std::to_string(j);
            o.expect(is_complex(A, C), "d² ≠ 0 for " + tag);
            const int top = t.r + j - t.branch_of(j).m;
            for (const auto& [k, mult] : cohomology(A, C)) {
                const bool nonzero = std::any_of(mult.begin(), mult.end(), [](int x) { return x != 0; });
                o.expect(!nonzero || k == t.r || k == top, "cohomology in degree " + std::to_string(k) + " for " + tag);
            }
            o.expect(cohomology(A, C) == rickard_cohomology_contract(t, j), "cohomology composition factors differ for " + tag);
            o.expect(euler_character(t, C) == rickard_euler_target(t, j), "Euler character differs for " + tag);
        }
    }
    return o;
}

inline Outcome tilting(const SelftestOptions&) {
    Outcome o;
    auto trees = line_trees();
    trees.push_back(ree_fixture());
    for (const auto& t : trees) {
        try {
            const auto rep = check_tilting(from_tree(t, 19));
            o.expect(rep.ok(), "tilting report not ok for " + tree_tag(t));
        } catch (const TiltingFailure& e) {
            o.expect(false, tree_tag(t) + ": " + e.what());
        }
    }
    const auto A = from_tree(line_tree(3, 2, 1), 7);
    auto family = rickard_family(A);
    family[1].d[0][0][0] = A.zero();
    bool negative = false;
    try {
        check_tilting(A, family);
    } catch (const TiltingFailure&) {
        negative = true;
    }
    o.expect(negative, "sabotaged boundary was not rejected");
    return o;
}

inline Outcome trimming(const SelftestOptions&) {
    Outcome o;
    std::mt19937_64 rng(11);
    std::vector<TreeAlgebra> algebras;
    for (const auto& t : {line_tree(3, 2, 1), line_tree(4, 1, 0), ree_fixture()}) algebras.push_back(from_tree(t, 19));
    for (int trial = 0; trial < 200; ++trial) {
        const auto& A = algebras[static_cast<std::size_t>(trial) % algebras.size()];
        const auto family = rickard_family(A);
        const auto& C = family[rng() % family.size()];
        const auto padded = gen::random_padding(rng, A, C, 1 + static_cast<int>(rng() % 3), 8);
        const auto T = trim(A, padded, C.lo, C.hi());
        const auto& D = family[rng() % family.size()];
        for (int i = -4; i <= 4; ++i)
            o.expect(homotopy_hom(A, T, D, i) == homotopy_hom(A, padded, D, i) && homotopy_hom(A, D, T, i) == homotopy_hom(A, D, padded, i) &&
                         homotopy_hom(A, T, T, i) == homotopy_hom(A, C, C, i),
                     "homotopy Hom dimensions changed at trial " + std::to_string(trial) + ", degree " + std::to_string(i));
    }
    return o;
}

inline Outcome perversity_unitriangular(const SelftestOptions&) {
    Outcome o;
    auto trees = random_trees();
    for (const auto& t : line_trees()) trees.push_back(t);
    trees.push_back(build_star_tree(7, 3, 2));
    for (const auto& t : trees) {
        const auto uni = check_unitriangular(decomposition_matrix(t), height_ordering(t));
        o.expect(uni.ok, "not lower unitriangular for " + tree_tag(t) + ": " + uni.reason);
        const auto rep = perversity_report(t);
        o.expect(rep.ok(), "perversity report failed for " + tree_tag(t));
        for (const auto& row : rep.rows) o.expect(row.degree == t.r + t.height(row.j), "degree mismatch for " + tree_tag(t));
    }
    return o;
}

} // namespace selftest_detail

struct Criterion {
    int id;
    std::string name;
    double budget;
    std::function<selftest_detail::Outcome(const SelftestOptions&)> run;
};

inline std::vector<Criterion> criteria() {
    using namespace selftest_detail;
    return {
        {1, "coxeter-tables", 1.0, coxeter_tables},   {2, "torus-orders", 0, torus_orders},
        {3, "regime-validation", 1.0, regimes},       {4, "hensel", 0, hensel},
        {5, "2g2-tree", 0, ree_tree},                 {6, "star-oracle", 1.0, star_oracle},
        {7, "algebra-dimensions", 0, algebra_dimensions}, {8, "ext-adjacency", 0, ext_adjacency},
        {9, "rickard", 5.0, rickard},                 {10, "tilting", 30.0, tilting},
        {11, "trimming", 0, trimming},                {12, "perversity-unitriangularity", 0, perversity_unitriangular},
    };
}

inline bool criterion_selected(const Criterion& c, const std::string& filter) {
    if (filter.empty()) return true;
    return c.name.find(filter) != std::string::npos || filter == std::to_string(c.id);
}

inline std::vector<CriterionResult> run_selftest(const SelftestOptions& opt) {
    std::vector<CriterionResult> out;
    for (const auto& c : criteria()) {
        if (!criterion_selected(c, opt.filter)) continue;
        CriterionResult r{c.id, c.name, false, "", 0, c.budget};
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto o = c.run(opt);
            r.pass = o.pass;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.pass && r.budget > 0 && r.seconds > r.budget) {
            r.pass = false;
            r.detail = "exceeded time budget";
        }
        out.push_back(r);
    }
    return out;
}

inline std::string format_result(const CriterionResult& r) {
    std::ostringstream s;
    s << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ". " << r.name;
    s.setf(std::ios::fixed);
    s.precision(3);
    s << " (" << r.seconds << " s";
    if (r.budget > 0) s << " / budget " << r.budget << " s";
    s << ")";
    if (!r.detail.empty()) s << ": " << r.detail;
    return s.str();
}

} // namespace coxbrauer
