#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "bench.hpp"
#include "json.hpp"
#include "umatch/errors.hpp"
#include "umatch/linalg.hpp"
#include "umatch/persistence.hpp"

using namespace umatch;
using json = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ComplexArgs {
    std::string input;
    std::uint32_t field = 2;
    Index max_dim = 1;
    double threshold = kInf;
    std::string metric = "euclidean";
    bool keep_empty = false;
    bool no_clearing = false;
    bool no_pareto = false;
    bool verify = false;
    std::string output;
};

void add_complex_flags(CLI::App* cmd, ComplexArgs& a) {
    cmd->add_option("input", a.input, "points/distances CSV or image file")->required();
    cmd->add_option("--field", a.field, "prime modulus")->default_val(2);
    cmd->add_option("--max-dim", a.max_dim, "highest homology dimension to report")->default_val(1);
    cmd->add_option("--threshold", a.threshold, "largest edge length kept (clique complexes)");
    cmd->add_option("--metric", a.metric, "euclidean or torus (point clouds)")->default_val("euclidean");
    cmd->add_flag("--keep-empty-bars", a.keep_empty, "report bars with equal birth and death");
    cmd->add_flag("--no-clearing", a.no_clearing, "decompose every row");
    cmd->add_flag("--no-pareto", a.no_pareto, "ignore leading-entry certificates");
    cmd->add_flag("--verify", a.verify, "re-check every emitted generator");
    cmd->add_option("--output", a.output, "write JSON here instead of stdout");
}

struct Loaded {
    ComplexPtr cx;
    std::string kind;
    std::unique_ptr<PersistenceEngine> engine;
    Index report_dim;
};

Loaded load(const ComplexArgs& a) {
    Field f(a.field);
    ComplexInput in = read_complex_input(a.input);
    Loaded l;
    switch (in.kind) {
        case ComplexInput::Kind::Points:
            l.cx = std::make_shared<CliqueComplex>(distance_matrix(in.rows, parse_metric(a.metric)), a.max_dim + 1,
                                                   a.threshold);
            l.kind = "clique";
            break;
        case ComplexInput::Kind::Distances:
            l.cx = std::make_shared<CliqueComplex>(in.rows, a.max_dim + 1, a.threshold);
            l.kind = "clique";
            break;
        case ComplexInput::Kind::Image:
            l.cx = std::make_shared<CubicalComplex>(in.shape, in.values);
            l.kind = "cubical";
            break;
    }
    l.engine = std::make_unique<PersistenceEngine>(l.cx, f, EngineOptions{!a.no_clearing, !a.no_pareto});
    l.report_dim = std::min(a.max_dim, l.cx->top_dim());
    return l;
}

json value(double x) { return std::isfinite(x) ? json(x) : json(x > 0 ? "inf" : "-inf"); }

json cell(const FilteredComplex& cx, Index dim, Index pos) { return cx.cell_id(dim, pos); }

json chain_json(const FilteredComplex& cx, const Chain& c) {
    json out = json::array();
    for (const auto& e : c.v) out.push_back({{"cell", cell(cx, c.dim, e.index)}, {"pos", e.index}, {"coeff", e.coeff}});
    return out;
}

json bar_json(const FilteredComplex& cx, const Bar& b) {
    json j;
    j["dim"] = b.dim;
    j["birth"] = b.birth;
    j["death"] = b.infinite() ? json(nullptr) : json(b.death);
    j["birth_cell"] = cell(cx, b.dim, b.birth_cell);
    j["death_cell"] = b.infinite() ? json(nullptr) : cell(cx, b.dim + 1, b.death_cell);
    j["birth_index"] = b.birth_index;
    j["death_index"] = b.infinite() ? json(nullptr) : json(b.death_index);
    return j;
}

json complex_json(const Loaded& l) {
    json cells = json::array();
    for (Index n = 0; n <= l.cx->top_dim(); ++n) cells.push_back(l.cx->num_cells(n));
    return {{"kind", l.kind}, {"cells", cells}};
}

void emit(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << j.dump(2) << '\n';
}

// A representative is a cycle born at the bar's birth cell that first bounds at its death cell.
bool generator_ok(const PersistenceEngine& e, const Bar& b, const Chain& z) {
    if (!e.boundary(z).v.empty() || z.v.max_index() != b.birth_cell) return false;
    auto bc = e.bounding_chain(z);
    return b.infinite() ? !bc : bc && bc->index == b.death_index;
}

std::vector<Bar> bars_upto(const Loaded& l, bool keep_empty) {
    std::vector<Bar> out;
    for (Index n = 0; n <= l.report_dim; ++n) {
        auto b = l.engine->barcode(n, keep_empty);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

int cmd_barcode(const ComplexArgs& a) {
    Loaded l = load(a);
    json j;
    j["field"] = a.field;
    j["complex"] = complex_json(l);
    j["bars"] = json::array();
    bool ok = true;
    for (const auto& b : bars_upto(l, a.keep_empty)) {
        j["bars"].push_back(bar_json(*l.cx, b));
        if (a.verify) ok = ok && generator_ok(*l.engine, b, l.engine->cycle_representative(b));
    }
    if (a.verify) j["verified"] = ok;
    emit(j, a.output);
    return ok ? 0 : 1;
}

int cmd_generators(const ComplexArgs& a, const std::string& selector, const std::string& strategy) {
    GeneratorStrategy s = parse_strategy(strategy);
    Loaded l = load(a);
    std::vector<Bar> bars;
    if (selector == "all") {
        bars = bars_upto(l, a.keep_empty);
    } else {
        unsigned long dim = 0, idx = 0;
        char extra = 0;
        int got = std::sscanf(selector.c_str(), "dim:%lu:%lu%c", &dim, &idx, &extra);
        if (got < 1 || got > 2 || selector.rfind("dim:", 0) != 0)
            throw UsageError("selector must be all, dim:N or dim:N:INDEX");
        if (dim > l.report_dim) throw UsageError("dimension above --max-dim");
        bars = l.engine->barcode(dim, a.keep_empty);
        if (got == 2) {
            if (idx >= bars.size()) throw UsageError("bar index out of range");
            bars = {bars[idx]};
        }
    }
    json j;
    j["field"] = a.field;
    j["strategy"] = strategy;
    j["generators"] = json::array();
    bool ok = true;
    for (const auto& b : bars) {
        json g = bar_json(*l.cx, b);
        Chain z = l.engine->cycle_representative(b, s);
        g["chain"] = chain_json(*l.cx, z);
        g["cocycle"] = chain_json(*l.cx, l.engine->cocycle_representative(b));
        if (a.verify) ok = ok && generator_ok(*l.engine, b, z);
        j["generators"].push_back(g);
    }
    if (a.verify) j["verified"] = ok;
    emit(j, a.output);
    return ok ? 0 : 1;
}

// "dim:pos=coeff,pos=coeff,..."; a missing "=coeff" means 1.
Chain parse_chain(const std::string& s, const Field& f) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("chain '" + s + "' must look like dim:pos=coeff,...");
    Chain c;
    try {
        c.dim = std::stoul(s.substr(0, colon));
        std::vector<Entry> entries;
        std::stringstream rest(s.substr(colon + 1));
        std::string tok;
        while (std::getline(rest, tok, ',')) {
            if (tok.empty()) continue;
            auto eq = tok.find('=');
            Index pos = std::stoul(tok.substr(0, eq));
            long long v = eq == std::string::npos ? 1 : std::stoll(tok.substr(eq + 1));
            entries.push_back({pos, f.from_int(v)});
        }
        c.v = SparseVector::from_entries(std::move(entries), f);
    } catch (const std::logic_error&) {
        throw UsageError("chain '" + s + "' must look like dim:pos=coeff,...");
    }
    return c;
}

int cmd_query(const ComplexArgs& a, const std::string& kind, const std::vector<std::string>& args) {
    Loaded l = load(a);
    const PersistenceEngine& e = *l.engine;
    Field f(a.field);
    auto want = [&](std::size_t n) {
        if (args.size() != n) throw UsageError("query " + kind + " takes " + std::to_string(n) + " argument(s)");
    };
    json j;
    j["query"] = kind;
    if (kind == "bounding-chain") {
        want(1);
        auto b = e.bounding_chain(parse_chain(args[0], f));
        j["bounds"] = bool(b);
        j["time"] = b ? value(b->time) : json(nullptr);
        j["witness"] = b ? chain_json(*l.cx, b->witness) : json(nullptr);
        if (a.verify && b) j["verified"] = e.boundary(b->witness) == parse_chain(args[0], f);
    } else if (kind == "time-of-homology") {
        want(2);
        auto t = e.time_of_homology(parse_chain(args[0], f), parse_chain(args[1], f));
        j["time"] = t ? value(*t) : json(nullptr);
    } else if (kind == "lifespan") {
        want(1);
        auto [lo, hi] = e.lifespan(parse_chain(args[0], f));
        j["birth"] = value(lo);
        j["death"] = std::isinf(hi) && hi > 0 ? json(nullptr) : value(hi);
    } else if (kind == "retrieve") {
        want(4);
        Index n = std::stoul(args[0]);
        Factor fac = parse_factor(args[1]);
        Axis ax = parse_axis(args[2]);
        Index idx = std::stoul(args[3]);
        Retrieved r = e.lazy(n).retrieve(fac, ax, idx);
        j["boundary_dim"] = n;
        j["factor"] = to_string(fac);
        j["axis"] = to_string(ax);
        j["index"] = idx;
        j["solves"] = r.solves;
        json v = json::array();
        for (const auto& x : r.vector) v.push_back({x.index, x.coeff});
        j["vector"] = v;
    } else {
        throw UsageError("unknown query '" + kind + "' (bounding-chain, time-of-homology, lifespan, retrieve)");
    }
    emit(j, a.output);
    return j.value("verified", true) ? 0 : 1;
}

// R M = D C column by column, plus unit columns of R off rho and unit rows of C off kappa.
bool identity_holds(const CompressedUmatch& u) {
    LazyUmatch lu(u);
    const auto& mt = u.matching();
    const Field& f = u.field();
    for (Index j = 0; j < u.d().ncols(); ++j) {
        SparseVector lhs = mul_columns(u.d(), lu.retrieve(Factor::C, Axis::Column, j).vector);
        SparseVector rhs;
        if (mt.col_matched(j)) {
            Index r = mt.row_of_col(j);
            rhs = scaled(f, lu.retrieve(Factor::R, Axis::Column, r).vector, mt.coeff_of_col(j));
        }
        if (lhs != rhs) return false;
        if (!mt.col_matched(j) && lu.retrieve(Factor::C, Axis::Row, j).vector != SparseVector::unit(j)) return false;
    }
    for (Index r = 0; r < u.d().nrows(); ++r)
        if (!mt.row_matched(r) && lu.retrieve(Factor::R, Axis::Column, r).vector != SparseVector::unit(r)) return false;
    return true;
}

CsMatrix matching_matrix(const Matching& mt, const Field& f) {
    std::vector<Triplet> t;
    for (const auto& p : mt.pairs()) t.push_back({p.row, p.col, p.coeff});
    return CsMatrix(mt.nrows(), mt.ncols(), f, t);
}

int cmd_decompose(const std::string& path, bool verify, const std::string& prefix) {
    auto d = load_matrix(path);
    CompressedUmatch u = decompose_compressed(d);
    const auto& mt = u.matching();
    json j;
    j["rows"] = d->nrows();
    j["cols"] = d->ncols();
    j["field"] = d->field().modulus();
    j["k"] = mt.size();
    json pairs = json::array();
    for (const auto& p : mt.pairs()) pairs.push_back({{"row", p.row + 1}, {"col", p.col + 1}, {"coeff", p.coeff}});
    j["matching"] = pairs;
    j["nnz"] = {{"D", d->nnz()}, {"M", mt.size()}, {"Rrr_inv_offdiag", u.rrr_inv().nnz_offdiagonal()}};
    const auto& s = u.stats();
    j["stats"] = {{"row_additions", s.row_additions},   {"rows_shortcut", s.rows_shortcut},
                  {"zero_op_pivots", s.zero_op_pivots}, {"entries_popped", s.entries_popped},
                  {"peak_retained_bytes", s.peak_retained_bytes}};
    bool ok = true;
    if (!prefix.empty()) {
        std::ofstream m(prefix + ".M.txt"), r(prefix + ".Rrr_inv.txt");
        if (!m || !r) throw UsageError("cannot write files with prefix " + prefix);
        write_triplets(m, matching_matrix(mt, d->field()));
        write_triplets(r, u.rrr_inv());
    }
    if (verify) {
        ok = identity_holds(u);
        j["verified"] = ok;
        if (!prefix.empty()) {
            // reload the dumped factors and check them on their own
            TripletFile mf = read_triplets_file(prefix + ".M.txt");
            std::vector<MatchedPair> mp;
            for (const auto& t : mf.entries) mp.push_back({t.row, t.col, t.value});
            CompressedUmatch back(d, Matching(mf.rows, mf.cols, mp), *load_matrix(prefix + ".Rrr_inv.txt"));
            bool rt = back.matching() == mt && identity_holds(back);
            j["round_trip"] = rt;
            ok = ok && rt;
        }
    }
    if (!prefix.empty()) emit(j, prefix + ".json");
    std::cout << j.dump(2) << '\n';
    return ok ? 0 : 1;
}

struct BenchArgs {
    std::vector<std::string> kinds;
    Index n = 25, dim = 2, side = 16;
    std::uint64_t seed = 1;
    std::uint32_t field = 2;
    bool no_pareto = false, parallel = false;
    std::string output;
};

int cmd_bench(const BenchArgs& a) {
    BenchOptions opt{a.field, !a.no_pareto, !a.parallel};
    std::vector<DatasetSpec> specs;
    for (const auto& k : a.kinds) specs.push_back({k, a.n, a.dim, a.side, a.seed});
    for (const auto& s : specs) make_dataset({s.kind, 1, 1, 1, 0}, 0);  // reject unknown kinds before running
    std::vector<BenchRecord> all;
    if (a.parallel) {
        std::vector<std::future<std::vector<BenchRecord>>> jobs;
        for (const auto& s : specs) jobs.push_back(std::async(std::launch::async, run_bench, s, opt));
        for (auto& j : jobs) {
            auto r = j.get();
            all.insert(all.end(), r.begin(), r.end());
        }
    } else {
        for (const auto& s : specs) {
            auto r = run_bench(s, opt);
            all.insert(all.end(), r.begin(), r.end());
        }
    }
    if (a.output.empty()) {
        write_bench_csv(std::cout, all);
    } else {
        std::ofstream out(a.output);
        if (!out) throw UsageError("cannot write " + a.output);
        write_bench_csv(out, all);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse U-match factorization and persistent homology"};
    app.require_subcommand(1);

    std::string dec_path, dec_prefix;
    bool dec_verify = false;
    auto* dec = app.add_subcommand("decompose", "factor a matrix given as a triplet file");
    dec->add_option("file", dec_path, "triplet file: 'rows cols modulus' then 1-based 'i j v' lines")->required();
    dec->add_flag("--verify", dec_verify, "check R M = D C, also after reloading dumped factors");
    dec->add_option("--output", dec_prefix, "write PREFIX.M.txt, PREFIX.Rrr_inv.txt and PREFIX.json");

    ComplexArgs bar_args;
    auto* bar = app.add_subcommand("barcode", "persistence barcode of a clique or cubical complex");
    add_complex_flags(bar, bar_args);

    ComplexArgs gen_args;
    std::string selector = "all", strategy = "exact";
    auto* gen = app.add_subcommand("generators", "cycle and cocycle representatives of bars");
    add_complex_flags(gen, gen_args);
    gen->add_option("selector", selector, "all, dim:N or dim:N:INDEX")->default_val("all");
    gen->add_option("--generators-strategy", strategy, "exact or early-stop")->default_val("exact");

    ComplexArgs q_args;
    std::string q_kind;
    std::vector<std::string> q_rest;
    auto* query = app.add_subcommand("query", "bounding-chain, time-of-homology, lifespan or retrieve");
    add_complex_flags(query, q_args);
    query->add_option("kind", q_kind, "query name")->required();
    query->add_option("args", q_rest, "chains as dim:pos=coeff,... or 'n factor axis index' for retrieve");

    BenchArgs b_args;
    auto* bench = app.add_subcommand("bench", "time the decomposition of synthetic boundary matrices");
    bench->add_option("datasets", b_args.kinds, "er, uniform, torus, circle, grf2d, grf3d")->required();
    bench->add_option("--n", b_args.n, "points or vertices")->default_val(25);
    bench->add_option("--dim", b_args.dim, "ambient dimension for uniform")->default_val(2);
    bench->add_option("--side", b_args.side, "image side for grf2d and grf3d")->default_val(16);
    bench->add_option("--seed", b_args.seed, "random seed")->default_val(1);
    bench->add_option("--field", b_args.field, "prime modulus")->default_val(2);
    bench->add_flag("--no-pareto", b_args.no_pareto, "ignore leading-entry certificates");
    bench->add_flag("--parallel", b_args.parallel, "run datasets concurrently");
    bench->add_option("--output", b_args.output, "CSV path instead of stdout");

    try {
        app.parse(argc, argv);
        if (*dec) return cmd_decompose(dec_path, dec_verify, dec_prefix);
        if (*bar) return cmd_barcode(bar_args);
        if (*gen) return cmd_generators(gen_args, selector, strategy);
        if (*query) return cmd_query(q_args, q_kind, q_rest);
        if (*bench) return cmd_bench(b_args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
