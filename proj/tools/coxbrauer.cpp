// coxbrauer: command-line front end.
// Exit codes: 0 success, 1 usage or I/O error, 2 a verification failed.

#include <coxbrauer/brauer_tree.hpp>
#include <coxbrauer/ell_arith.hpp>
#include <coxbrauer/homotopy.hpp>
#include <coxbrauer/oracle.hpp>
#include <coxbrauer/root_data.hpp>
#include <coxbrauer/selftest.hpp>
#include <coxbrauer/tree_algebra.hpp>
#include <coxbrauer/tree_json.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace coxbrauer;

namespace {

constexpr int kUsage = 1;
constexpr int kVerification = 2;

struct VerificationFailed {
    Json report;
};

struct TypeArgs {
    std::string type;
    int rank = 0;
};

struct TreeSource {
    std::string fixture;
    std::string tree_file;
    std::string series_file;
    TypeArgs type;
    u64 qsq = 0;
    u64 ell = 0;
    int mu = 0;
    int r = -1;
};

struct OutputArgs {
    std::string out = "-";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << text;
}

void emit(const OutputArgs& o, const Json& j) { write_output(o.out, j.dump(2) + "\n"); }

Json rational_json(const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); }

void add_type_options(CLI::App* cmd, TypeArgs& t, bool required) {
    auto* opt = cmd->add_option("--type", t.type, "type name, e.g. A, 2G2, 3D4, E8 (rank may be appended)");
    if (required) opt->required();
    cmd->add_option("--rank", t.rank, "rank for families without a fixed rank");
}

CoxeterDatum datum_of(const TypeArgs& t) { return coxeter_datum(parse_type(t.type, t.rank)); }

void add_tree_options(CLI::App* cmd, TreeSource& s) {
    auto* fx = cmd->add_option("--fixture", s.fixture, "built-in tree: 2g2, line<N>, star<D>x<E>n<n>");
    auto* tf = cmd->add_option("--tree", s.tree_file, "tree JSON file");
    auto* sf = cmd->add_option("--series", s.series_file, "series JSON {h0, branches}; needs --type/--qsq/--ell or --mu");
    fx->excludes(tf)->excludes(sf);
    tf->excludes(sf);
    add_type_options(cmd, s.type, false);
    cmd->add_option("--qsq", s.qsq, "q (or q^2 for Suzuki/Ree types)");
    cmd->add_option("--ell", s.ell, "the prime ell");
    cmd->add_option("--mu", s.mu, "exceptional multiplicity (line fixtures and --series without a regime)");
    cmd->add_option("--r", s.r, "r (line fixtures and --series without a regime)");
}

SeriesDatum series_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("", "expected an object");
    const int h0 = detail::as_small_int(detail::require(j, "h0", ""), "/h0");
    const auto& branches = detail::require(j, "branches", "");
    if (!branches.is_array()) throw ParseError("/branches", "expected an array");
    SeriesDatum s{h0, {}};
    for (std::size_t i = 0; i < branches.size(); ++i) {
        const std::string w = "/branches/" + std::to_string(i);
        const auto& b = branches[i];
        s.branches.push_back({detail::as_int(detail::require(b, "zeta", w), w + "/zeta"), detail::as_small_int(detail::require(b, "m", w), w + "/m"),
                              detail::as_small_int(detail::require(b, "M", w), w + "/M")});
    }
    try {
        validate_series(s);
    } catch (const Error& e) {
        throw ParseError("/branches", e.what());
    }
    return s;
}

PlanarBrauerTree load_tree(const TreeSource& s) {
    if (!s.tree_file.empty()) return tree_from_json_text(read_file(s.tree_file));
    if (!s.series_file.empty()) {
        Json j;
        try {
            j = Json::parse(read_file(s.series_file));
        } catch (const Json::parse_error& e) {
            throw ParseError("byte " + std::to_string(e.byte), "invalid JSON");
        }
        const auto series = series_from_json(j);
        if (!s.type.type.empty()) {
            if (!s.qsq || !s.ell) throw Error(ErrorCode::InvalidArgument, "--series with --type needs --qsq and --ell");
            return build_hlm_tree(validate_ell(datum_of(s.type), s.qsq, s.ell), series);
        }
        if (s.mu < 1) throw Error(ErrorCode::InvalidArgument, "--series needs either --type/--qsq/--ell or --mu");
        return build_hlm_tree(series, s.mu, std::max(s.r, 0));
    }
    const std::string& f = s.fixture;
    if (f == "2g2") return g2ree_tree(validate_ell(coxeter_datum({Family::G2Ree, 2}), s.qsq ? s.qsq : 27, s.ell ? s.ell : 19));
    if (f.rfind("line", 0) == 0 && f.size() > 4) {
        const int h0 = std::stoi(f.substr(4));
        if (h0 < 1) throw Error(ErrorCode::InvalidArgument, "line fixture needs h0 >= 1");
        return line_tree(h0, s.mu > 0 ? s.mu : 1, s.r >= 0 ? s.r : h0 - 1);
    }
    if (f.rfind("star", 0) == 0) {
        unsigned long long d = 0, n = 0;
        int e = 0;
        if (std::sscanf(f.c_str(), "star%llux%dn%llu", &d, &e, &n) == 3) return build_star_tree(d, e, n);
    }
    if (f.empty()) throw Error(ErrorCode::InvalidArgument, "one of --fixture, --tree or --series is required");
    throw Error(ErrorCode::InvalidArgument, "unknown fixture '" + f + "'");
}

/// Tree's ell when present, else the least prime ≡ 1 (mod h0).
u64 default_field(const PlanarBrauerTree& t, u64 requested) {
    if (requested) {
        if (!is_prime(requested)) throw Error(ErrorCode::InvalidArgument, "--field must be prime");
        return requested;
    }
    if (t.ell) return *t.ell;
    for (u64 p = static_cast<u64>(t.h0) + 1;; p += static_cast<u64>(t.h0))
        if (is_prime(p)) return p;
}

Json matrix_json(const std::vector<std::vector<int>>& m) { return m; }

int run_info(const TypeArgs& t, bool dump_table, const OutputArgs& o) {
    if (dump_table) {
        emit(o, table_to_json(builtin_table()));
        return 0;
    }
    if (t.type.empty()) throw Error(ErrorCode::InvalidArgument, "--type is required");
    const auto c = datum_of(t);
    Json eps = Json::array();
    for (const auto& e : c.epsilons) eps.push_back(rational_json(e));
    emit(o, Json{{"type", c.type.name()},
                 {"h", c.h},
                 {"h0", c.h0},
                 {"delta", c.delta},
                 {"r", c.r},
                 {"N", c.N},
                 {"degrees", c.degrees},
                 {"epsilons", eps},
                 {"group_order", group_order_poly(c).str()},
                 {"torus_order", torus_order_poly(c).str()}});
    return 0;
}

std::string reason_name(RegimeReason r) {
    switch (r) {
    case RegimeReason::NotPrime: return "NotPrime";
    case RegimeReason::DividesQ: return "DividesQ";
    case RegimeReason::NotDividing: return "NotDividing";
    case RegimeReason::DividesWeylOrder: return "DividesWeylOrder";
    case RegimeReason::WrongOrder: return "WrongOrder";
    }
    return "Unknown";
}

int run_validate(const TypeArgs& t, u64 qsq, u64 ell, const OutputArgs& o) {
    const auto c = datum_of(t);
    try {
        const auto ctx = validate_ell(c, qsq, ell);
        emit(o, Json{{"valid", true},
                     {"reason", nullptr},
                     {"eigenvalue_table", eigenvalue_table(ctx)},
                     {"precision", ctx.precision},
                     {"torus_valuation", ctx.torus_valuation},
                     {"exceptional_multiplicity", exceptional_multiplicity(ctx)}});
        return 0;
    } catch (const BadRegime& e) {
        emit(o, Json{{"valid", false}, {"reason", reason_name(e.reason())}, {"message", e.what()}, {"eigenvalue_table", Json::array()}});
        return kVerification;
    }
}

int run_tree(const TreeSource& s, const std::string& format, const OutputArgs& o) {
    const auto t = load_tree(s);
    if (format == "dot")
        write_output(o.out, to_dot(t));
    else
        emit(o, to_json(t));
    return 0;
}

int run_decmatrix(const TreeSource& s, const OutputArgs& o) {
    const auto t = load_tree(s);
    const auto D = decomposition_matrix(t);
    Json rows = Json::array();
    for (int j = 0; j < t.h0; ++j) rows.push_back(t.vertex_name(j));
    for (int k = 0; k < t.multiplicity; ++k) rows.push_back("exc" + std::to_string(k));
    Json cols = Json::array();
    for (int j = 0; j < t.h0; ++j) cols.push_back("S" + std::to_string(j));
    const auto uni = check_unitriangular(D, height_ordering(t));
    Json j{{"rows", rows},
           {"columns", cols},
           {"matrix", matrix_json(D.rows)},
           {"cartan", cartan_matrix(D)},
           {"height_ordering", uni.order},
           {"unitriangular", uni.ok}};
    if (!uni.ok) j["unitriangular_reason"] = uni.reason;
    emit(o, j);
    return 0;
}

int run_algebra(const TreeSource& s, u64 field, const OutputArgs& o) {
    const auto t = load_tree(s);
    const auto A = from_tree(t, default_field(t, field));
    std::vector<std::size_t> proj;
    for (int a = 0; a < A.vertex_count(); ++a) proj.push_back(A.projective_dim(a));
    emit(o, Json{{"field", A.field()},
                 {"dimension", A.dim()},
                 {"closed_form_dimension", closed_form_dimension(t)},
                 {"projective_dimensions", proj},
                 {"cartan", A.hom_dimensions()},
                 {"ext1", matrix_json(A.ext1_matrix())},
                 {"arrows", A.arrows().size()}});
    return 0;
}

Json tilting_json(const TiltingReport& rep) {
    Json homs = Json::array();
    for (const auto& [pair, table] : rep.homs) {
        Json degrees = Json::object();
        for (const auto& [i, d] : table) degrees[std::to_string(i)] = d;
        homs.push_back({{"j", pair.first}, {"j2", pair.second}, {"dims", degrees}});
    }
    return Json{{"passed", rep.ok()},
                {"hom_vanishing", rep.hom_vanishing},
                {"generation", rep.generation},
                {"end_dimension", rep.end_dim},
                {"expected_end_dimension", rep.expected_end_dim},
                {"homs", homs}};
}

int run_rickard(const TreeSource& s, int vertex, bool tilting, u64 field, const OutputArgs& o) {
    const auto t = load_tree(s);
    if (vertex < 0 || vertex >= t.h0)
        throw Error(ErrorCode::InvalidArgument, "vertex " + std::to_string(vertex) + " out of range [0, " + std::to_string(t.h0) + ")");
    const auto A = from_tree(t, default_field(t, field));
    const auto C = rickard_complex(A, vertex);
    Json terms = Json::object();
    for (int k = C.lo; k <= C.hi(); ++k) terms[std::to_string(k)] = C.term(k);
    Json coh = Json::object();
    const auto H = cohomology(A, C);
    for (const auto& [k, mult] : H) coh[std::to_string(k)] = mult;
    Json j{{"vertex", vertex},
           {"field", A.field()},
           {"degrees", {C.lo, C.hi()}},
           {"terms", terms},
           {"euler", euler_character(t, C)},
           {"cohomology", coh},
           {"cohomology_matches_contract", H == rickard_cohomology_contract(t, vertex)},
           {"tilting", nullptr}};
    if (tilting) {
        try {
            j["tilting"] = tilting_json(check_tilting(A));
        } catch (const TiltingFailure& e) {
            j["tilting"] = Json{{"passed", false}, {"failure", {{"j", e.first()}, {"j2", e.second()}, {"degree", e.degree()}, {"message", e.what()}}}};
            throw VerificationFailed{j};
        }
    }
    emit(o, j);
    return 0;
}

int run_star(u64 d, int e, u64 n, bool verify, const OutputArgs& o) {
    const auto t = build_star_tree(d, e, n);
    Json j{{"tree", to_json(t)}, {"decomposition", matrix_json(decomposition_matrix(t).rows)}};
    if (verify) {
        const auto G = MetacyclicGroup::make(d, e, n);
        try {
            const auto rep = verify_star(t, G);
            j["oracle"] = matrix_json(rep.oracle_matrix.rows);
            j["ext_tree"] = matrix_json(rep.tree_ext);
            j["ext_group"] = matrix_json(rep.group_ext);
            j["match"] = true;
        } catch (const Mismatch& m) {
            j["match"] = false;
            j["mismatch"] = {{"row", m.row()}, {"col", m.col()}, {"message", m.what()}};
            throw VerificationFailed{j};
        }
    }
    emit(o, j);
    return 0;
}

int run_selftest_cmd(const std::string& filter, const std::string& table_file, const std::string& golden_file) {
    SelftestOptions opt;
    opt.filter = filter;
    if (!table_file.empty()) {
        try {
            opt.table = table_from_json_text(read_file(table_file));
        } catch (const ParseError& e) {
            std::cout << "FAIL  1. coxeter-tables: table file rejected: " << e.what() << "\n";
            return kVerification;
        }
    }
    if (!golden_file.empty()) opt.golden_dot = read_file(golden_file);
    const auto results = run_selftest(opt);
    if (results.empty()) throw Error(ErrorCode::InvalidArgument, "filter '" + filter + "' selects no criteria");
    int failures = 0;
    for (const auto& r : results) {
        std::cout << format_result(r) << "\n";
        failures += !r.pass;
    }
    std::cout << results.size() - static_cast<std::size_t>(failures) << "/" << results.size() << " criteria passed\n";
    return failures ? kVerification : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brauer trees, tree algebras and Rickard complexes for Coxeter-case principal blocks"};
    app.require_subcommand(1);
    OutputArgs out;

    TypeArgs info_type;
    bool dump_table = false;
    auto* info = app.add_subcommand("info", "Coxeter data of a type");
    add_type_options(info, info_type, false);
    info->add_flag("--dump-table", dump_table, "print the built-in degree table as JSON");
    info->add_option("--out", out.out, "output path, - for stdout");

    TypeArgs val_type;
    u64 val_q = 0, val_ell = 0;
    auto* validate = app.add_subcommand("validate", "check an (q, ell) regime");
    add_type_options(validate, val_type, true);
    validate->add_option("--qsq", val_q, "q (or q^2 for Suzuki/Ree types)")->required();
    validate->add_option("--ell", val_ell, "the prime ell")->required();
    validate->add_option("--out", out.out, "output path, - for stdout");

    TreeSource tree_src;
    std::string format = "json";
    auto* tree = app.add_subcommand("tree", "emit a planar Brauer tree");
    add_tree_options(tree, tree_src);
    tree->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    tree->add_option("--out", out.out, "output path, - for stdout");

    auto* dec = app.add_subcommand("decmatrix", "decomposition and Cartan matrices");
    add_tree_options(dec, tree_src);
    dec->add_option("--out", out.out, "output path, - for stdout");

    u64 field = 0;
    auto* alg = app.add_subcommand("algebra", "Brauer tree algebra invariants");
    add_tree_options(alg, tree_src);
    alg->add_option("--field", field, "prime field F_p (default: the tree's ell)");
    alg->add_option("--out", out.out, "output path, - for stdout");

    int vertex = -1;
    bool check = false;
    auto* rk = app.add_subcommand("rickard", "Rickard complex of one vertex");
    add_tree_options(rk, tree_src);
    rk->add_option("--vertex", vertex, "vertex j")->required();
    rk->add_flag("--check-tilting", check, "verify the whole family is tilting");
    rk->add_option("--field", field, "prime field F_p (default: the tree's ell)");
    rk->add_option("--out", out.out, "output path, - for stdout");

    u64 star_d = 0, star_n = 0;
    int star_e = 0;
    bool verify = false;
    auto* star = app.add_subcommand("star", "star tree of D⋊E, optionally checked against characters");
    star->add_option("--d", star_d, "|D|, a power of ell")->required();
    star->add_option("--e", star_e, "|E|")->required();
    star->add_option("--n", star_n, "action exponent: x y x^-1 = y^n")->required();
    star->add_flag("--verify", verify, "compare with the brute-force character table");
    star->add_option("--out", out.out, "output path, - for stdout");

    std::string filter, table_file, golden_file;
    auto* st = app.add_subcommand("selftest", "run the acceptance fixtures");
    st->add_option("--filter", filter, "run only criteria whose name contains this string (or with this number)");
    st->add_option("--table", table_file, "degree table JSON to check instead of the built-in one");
    st->add_option("--golden", golden_file, "expected DOT rendering of the 2G2 tree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*info) return run_info(info_type, dump_table, out);
        if (*validate) return run_validate(val_type, val_q, val_ell, out);
        if (*tree) return run_tree(tree_src, format, out);
        if (*dec) return run_decmatrix(tree_src, out);
        if (*alg) return run_algebra(tree_src, field, out);
        if (*rk) return run_rickard(tree_src, vertex, check, field, out);
        if (*star) return run_star(star_d, star_e, star_n, verify, out);
        if (*st) return run_selftest_cmd(filter, table_file, golden_file);
    } catch (const VerificationFailed& v) {
        emit(out, v.report);
        return kVerification;
    } catch (const Mismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerification;
    } catch (const TiltingFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
