// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "dense.hpp"
#include "homology.hpp"
#include "umatch/datasets.hpp"
#include "umatch/linalg.hpp"
#include "umatch/persistence.hpp"
#include "umatch/sparsify.hpp"

using namespace umatch;
using namespace umatch::testing;

namespace {

// Time limits in seconds.
constexpr double kExampleLimit = 0.001;
constexpr double kUniquenessLimit = 10;
constexpr double kIdentityLimit = 10;
constexpr double kRetrievalLimit = 10;
constexpr double kExtremalityLimit = 30;
constexpr double kBarcodeLimit = 60;
constexpr double kGeneratorLimit = 60;
constexpr double kNeutralityLimit = 60;
constexpr double kCompressionLimit = 120;
constexpr double kDisjointLimit = 60;
constexpr double kBridgeLimit = 10;

// Compression trend thresholds.
constexpr double kCompressionWinShare = 0.95;
constexpr double kCompressionMedianRatio = 0.5;
constexpr int kCompressionTrials = 20;
constexpr Index kCompressionVertices = 25;

struct Tally {
    std::size_t checks = 0, fails = 0;
    std::string first;
    void operator()(bool ok, const std::string& what) {
        ++checks;
        if (!ok && fails++ == 0) first = what;
    }
    std::string summary() const {
        return std::to_string(checks - fails) + "/" + std::to_string(checks) + " checks" +
               (fails ? ", first failure: " + first : "");
    }
};

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome from(const Tally& t) { return {t.fails == 0 && t.checks > 0, t.summary()}; }

std::vector<std::pair<Index, Index>> support(const Matching& m) {
    std::vector<std::pair<Index, Index>> s;
    for (const auto& p : m.pairs()) s.push_back({p.row, p.col});
    return s;
}

OraclePtr share(CsMatrix m) { return std::make_shared<CsMatrix>(std::move(m)); }

// Random instances shared by the matrix-level criteria: sizes up to 12 x 16 over GF(2) and GF(7).
std::vector<OraclePtr> random_instances(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<OraclePtr> out;
    for (int t = 0; t < count; ++t) {
        Field f(t % 2 ? 7 : 2);
        Index m = 1 + rng() % 12, n = 1 + rng() % 16;
        out.push_back(share(random_matrix(rng, m, n, f, 0.1 + 0.08 * (t % 7))));
    }
    return out;
}

Outcome example() {
    Field f(7);
    auto d = share(Dense::from_ints({{3, -6}, {3, -6}}, f).sparse());
    auto u = decompose_compressed(d);
    LazyUmatch lu(u);
    Tally t;
    t(u.matching().pairs() == std::vector<MatchedPair>{{1, 0, 3}}, "M = {(2,1,3)}");
    Dense r(2, 2, f), c(2, 2, f);
    for (Index j = 0; j < 2; ++j) {
        for (const auto& e : lu.retrieve(Factor::R, Axis::Column, j).vector) r.at(e.index, j) = e.coeff;
        for (const auto& e : lu.retrieve(Factor::C, Axis::Column, j).vector) c.at(e.index, j) = e.coeff;
    }
    t(r == Dense::from_ints({{1, 1}, {0, 1}}, f), "R = [[1,1],[0,1]]");
    t(c == Dense::from_ints({{1, 2}, {0, 1}}, f), "C = [[1,2],[0,1]]");
    return from(t);
}

Outcome uniqueness() {
    Tally t;
    auto inst = random_instances(240, 101);
    for (const auto& d : inst) {
        Matching full = decompose_full(d).matching();
        Matching comp = decompose_compressed(d).matching();
        Matching dual = decompose_compressed(antitranspose(d)).matching().antitransposed();
        Matching oracle = rank_oracle_matching(Dense::of(*d));
        t(full == comp, "full vs compressed");
        t(full == dual, "full vs anti-transpose");
        t(support(full) == support(oracle), "full vs rank oracle (support)");
    }
    return {t.fails == 0 && inst.size() >= 200, std::to_string(inst.size()) + " matrices, " + t.summary()};
}

Outcome identities() {
    Tally t;
    for (const auto& d : random_instances(240, 202)) {
        auto full = decompose_full(d);
        auto x = dense_factors(full);
        const auto& mt = full.matching();
        std::string why = check_umatch(x, mt);
        t(why.empty(), why);
        auto rho = mt.rho(), kap = mt.kappa(), rhob = mt.rho_bar(), kapb = mt.kappa_bar();
        if (rho.empty()) continue;
        const Field& f = x.d.f;
        auto all = [](Index k) {
            std::vector<Index> v(k);
            for (Index i = 0; i < k; ++i) v[i] = i;
            return v;
        };
        auto zero = [&](Index a, Index b) { return Dense(a, b, f); };
        auto ident = [&](const std::vector<Index>& rows, Index n) {
            Dense e(rows.size(), n, f);
            for (Index i = 0; i < rows.size(); ++i) e.at(i, rows[i]) = 1;
            return e;
        };
        Dense rrr_inv = x.rinv.sub(rho, rho);
        Dense drk = x.d.sub(rho, kap);
        Dense a = rrr_inv * drk;
        Dense ainv = inverse(a);
        Dense mrk = x.m.sub(rho, kap);
        // C
        t(x.c.sub(kap, kap) == ainv * mrk, "C_kk = A^-1 M_rk");
        t(x.c.sub(kap, kapb) == zero(kap.size(), kapb.size()) - ainv * rrr_inv * x.d.sub(rho, kapb),
          "C_k,kbar = -A^-1 Rrr^-1 D_r,kbar");
        t(x.c.sub(kapb, kap) == zero(kapb.size(), kap.size()), "C_kbar,k = 0");
        t(x.c.sub(kapb, kapb) == Dense::identity(kapb.size(), f), "C_kbar,kbar = I");
        // C^{-1}
        t(x.cinv.sub(kap, all(x.d.n)) == inverse(mrk) * rrr_inv * x.d.sub(rho, all(x.d.n)),
          "Cinv_k = M_rk^-1 Rrr^-1 D_r");
        t(x.cinv.sub(kapb, all(x.d.n)) == ident(kapb, x.d.n), "Cinv_kbar = I");
        // R^{-1}
        t(x.rinv.sub(rhob, rhob) == Dense::identity(rhob.size(), f), "Rinv_rbar,rbar = I");
        t(x.rinv.sub(rhob, rho) == zero(rhob.size(), rho.size()) - x.d.sub(rhob, kap) * inverse(drk),
          "Rinv_rbar,r = -D_rbar,k D_rk^-1");
        t(x.rinv.sub(rho, rhob) == zero(rho.size(), rhob.size()), "Rinv_r,rbar = 0");
        // R
        t(x.r.sub(all(x.d.m), rhob) == ident(rhob, x.d.m).transpose(), "R_rbar = I");
        t(x.r.sub(all(x.d.m), rho) == x.d.sub(all(x.d.m), kap) * ainv, "R_r = D_k A^-1");
    }
    return from(t);
}

std::uint32_t expected_solves(Factor fac, Axis ax, bool matched) {
    switch (fac) {
        case Factor::Cinv: return 0;
        case Factor::Rinv: return ax == Axis::Row ? !matched : matched;
        case Factor::R: return ax == Axis::Row ? 1 : matched;
        case Factor::C: return ax == Axis::Row ? matched : 1;
    }
    return 99;
}

Outcome retrieval() {
    Tally t;
    std::uint32_t worst = 0;
    for (const auto& d : random_instances(120, 303)) {
        auto truth = dense_factors(decompose_full(d));
        auto comp = decompose_compressed(d);
        LazyUmatch lazy(comp);
        const auto& mt = comp.matching();
        for (Factor fac : {Factor::R, Factor::Rinv, Factor::C, Factor::Cinv}) {
            const Dense& x = fac == Factor::R      ? truth.r
                             : fac == Factor::Rinv ? truth.rinv
                             : fac == Factor::C    ? truth.c
                                                   : truth.cinv;
            bool on_rows = fac == Factor::R || fac == Factor::Rinv;
            for (Index i = 0; i < x.m; ++i) {
                bool matched = on_rows ? mt.row_matched(i) : mt.col_matched(i);
                for (Axis ax : {Axis::Row, Axis::Column}) {
                    auto got = lazy.retrieve(fac, ax, i);
                    auto want = ax == Axis::Row ? x.row(i) : x.col(i);
                    std::string what = to_string(fac) + " " + to_string(ax);
                    t(densify(got.vector, want.size()) == want, what + " entries");
                    t(got.solves == expected_solves(fac, ax, matched), what + " solve count");
                    worst = std::max(worst, got.solves);
                }
            }
        }
    }
    t(worst <= 1, "at most one solve");
    return {t.fails == 0, t.summary() + ", max solves " + std::to_string(worst)};
}

Outcome extremality() {
    Tally t;
    std::mt19937_64 rng(404);
    Field f(2);
    int instances = 0;
    for (int k = 0; k < 60; ++k) {
        Index m = 2 + rng() % 11, n = 2 + rng() % 11;  // at most 12 columns
        auto d = share(random_matrix(rng, m, n, f, 0.3 + 0.05 * (k % 6)));
        Dense dd = Dense::of(*d), dt = dd.transpose();
        auto u = decompose_compressed(d);
        ++instances;
        // primal: right-hand side in the image and one drawn at random
        std::vector<Coeff> x0(n), b2(m), y0(m);
        for (auto& c : x0) c = rng() % 2;
        for (auto& c : b2) c = rng() % 2;
        for (auto& c : y0) c = rng() % 2;
        for (const auto& rhs : {mul(dd, x0), b2}) {
            long best = 1L << 30;
            bool any = false;
            for_each_vector(f, n, [&](const std::vector<Coeff>& x) {
                if (mul(dd, x) == rhs) any = true, best = std::min(best, max_support(x));
            });
            auto sol = solve_dx_b(u, sparsify_vec(rhs));
            t(bool(sol) == any, "solve_dx_b solvability");
            if (sol) t(max_support(densify(*sol, n)) == best, "solve_dx_b minimal max support");
        }
        // dual
        auto c = mul(dt, y0);
        long best = -1;
        for_each_vector(f, m, [&](const std::vector<Coeff>& y) {
            if (mul(dt, y) == c) best = std::max(best, min_support(y));
        });
        auto sol = solve_yd_c(u, sparsify_vec(c));
        t(bool(sol), "solve_yd_c solvability");
        if (sol) {
            auto ys = densify(*sol, m);
            t(mul(dt, ys) == c, "solve_yd_c solves");
            t(min_support(ys) == best, "solve_yd_c maximal min support");
        }
    }
    return {t.fails == 0, std::to_string(instances) + " instances, " + t.summary()};
}

struct Fixture {
    std::string name;
    ComplexPtr cx;
};

std::vector<Fixture> fixtures() {
    std::vector<Fixture> out;
    out.push_back({"3-point", std::make_shared<CliqueComplex>(
                                  std::vector<std::vector<double>>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, 2)});
    out.push_back({"circle-20", std::make_shared<CliqueComplex>(
                                    distance_matrix(circle_points(20), Metric::Euclidean), 2, 2.0)});
    std::mt19937_64 rng(505);
    out.push_back({"torus-12", std::make_shared<CliqueComplex>(
                                   distance_matrix(uniform_points(12, 3, rng), Metric::Torus), 2)});
    std::vector<double> px(64);
    for (auto& v : px) v = double(rng() % 10);
    out.push_back({"image-8x8", std::make_shared<CubicalComplex>(std::vector<Index>{8, 8}, px)});
    return out;
}

Outcome barcodes() {
    Tally t;
    std::string counts;
    for (const auto& fx : fixtures()) {
        for (std::uint32_t p : {2u, 3u}) {
            Field f(p);
            PersistenceEngine e(fx.cx, f);
            HomologyOracle h(fx.cx, f);
            for (Index n = 0; n <= e.top_dim(); ++n) {
                auto bars = e.barcode(n);
                if (p == 2) counts += " " + fx.name + ":H" + std::to_string(n) + "=" + std::to_string(bars.size());
                for (double v : h.values()) {
                    Index alive = 0;
                    for (const auto& b : bars) alive += b.birth <= v && v < b.death;
                    t(alive == h.betti(n, v), fx.name + " H" + std::to_string(n));
                }
            }
        }
    }
    return {t.fails == 0, t.summary() + ";" + counts};
}

bool generator_valid(const PersistenceEngine& e, const HomologyOracle& h, const Bar& b, const Chain& z) {
    Index n = b.dim;
    auto x = densify(z.v, h.cells(n));
    if (z.dim != n || !h.is_cycle(n, x) || z.v.max_index() != b.birth_cell) return false;
    if (!h.new_class(n, x, h.count_before(n + 1, b.birth_index + 1))) return false;
    if (b.infinite()) return !h.bounds_within(n, x, h.cells(n + 1)) && !e.bounding_chain(z);
    return h.bounds_within(n, x, b.death_cell + 1) && !h.bounds_within(n, x, b.death_cell);
}

Outcome generators() {
    Tally t;
    std::size_t reps = 0;
    for (const auto& fx : fixtures()) {
        Field f(2);
        PersistenceEngine e(fx.cx, f);
        HomologyOracle h(fx.cx, f);
        bool small = fx.cx->num_cells_total() <= 400;
        for (Index n = 0; n <= e.top_dim(); ++n) {
            for (const auto& b : e.barcode(n, small)) {
                for (auto s : {GeneratorStrategy::Exact, GeneratorStrategy::EarlyStop}) {
                    t(generator_valid(e, h, b, e.cycle_representative(b, s)),
                      fx.name + " H" + std::to_string(n) + (s == GeneratorStrategy::Exact ? " exact" : " early-stop"));
                    ++reps;
                }
            }
        }
    }
    return {t.fails == 0, std::to_string(reps) + " representatives, " + t.summary()};
}

Outcome neutrality() {
    Tally t;
    for (const auto& fx : fixtures()) {
        Field f(2);
        PersistenceEngine plain(fx.cx, f, {false, false});
        for (EngineOptions o : {EngineOptions{true, false}, EngineOptions{false, true}, EngineOptions{true, true}}) {
            PersistenceEngine e(fx.cx, f, o);
            for (Index n = 1; n <= e.top_dim(); ++n)
                t(e.umatch(n).matching() == plain.umatch(n).matching(), fx.name + " matching");
            for (Index n = 0; n <= e.top_dim(); ++n) {
                auto x = e.barcode(n, true), y = plain.barcode(n, true);
                bool same = x.size() == y.size();
                for (Index k = 0; same && k < x.size(); ++k)
                    same = x[k].birth_cell == y[k].birth_cell && x[k].death_cell == y[k].death_cell;
                t(same, fx.name + " barcode");
            }
        }
        PersistenceEngine e(fx.cx, f);
        for (Index n = 1; n <= e.top_dim(); ++n)
            for (Index c : e.umatch(n).matching().kappa())
                t(is_valid_pivot_column(e.umatch(n), c, early_stop_solve(e.lazy(n), c)), fx.name + " early-stop column");
    }
    return from(t);
}

Outcome compression() {
    int wins = 0;
    std::vector<double> ratios;
    std::size_t sum_c = 0, sum_f = 0;
    for (int s = 0; s < kCompressionTrials; ++s) {
        auto cx = make_dataset({"er", kCompressionVertices, 2, 0, std::uint64_t(s + 1)}, 2);
        auto d = boundary_oracle(cx, 2, Field(2));
        std::size_t comp = decompose_compressed(d).rrr_inv().nnz_offdiagonal();
        std::size_t full = decompose_full(d).rinv().nnz_offdiagonal();
        wins += comp < full;
        ratios.push_back(full ? double(comp) / double(full) : 1.0);
        sum_c += comp;
        sum_f += full;
    }
    std::sort(ratios.begin(), ratios.end());
    double median = (ratios[ratios.size() / 2] + ratios[(ratios.size() - 1) / 2]) / 2;
    bool ok = wins >= kCompressionWinShare * kCompressionTrials && median < kCompressionMedianRatio;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "compressed smaller in %d/%d trials, median ratio %.4f, mean nnz %.1f vs %.1f", wins,
                  kCompressionTrials, median, double(sum_c) / kCompressionTrials, double(sum_f) / kCompressionTrials);
    return {ok, buf};
}

Outcome disjoint() {
    Tally t;
    for (const auto& fx : fixtures()) {
        PersistenceEngine e(fx.cx, Field(2), {false, true});
        // assemble the total matching over global indices
        std::vector<int> as_row(fx.cx->num_cells_total(), 0), as_col(fx.cx->num_cells_total(), 0);
        for (Index n = 1; n <= e.top_dim(); ++n)
            for (const auto& p : e.umatch(n).matching().pairs()) {
                as_row[fx.cx->global_index(n - 1, p.row)] = 1;
                as_col[fx.cx->global_index(n, p.col)] = 1;
            }
        for (Index g = 0; g < as_row.size(); ++g) t(!(as_row[g] && as_col[g]), fx.name);
    }
    return from(t);
}

Outcome bridges() {
    Tally t;
    std::mt19937_64 rng(606);
    for (int k = 0; k < 60; ++k) {
        Field f(k % 2 ? 7 : 5);
        Index m = 1 + rng() % 9, n = 1 + rng() % 10;
        auto d = share(random_matrix(rng, m, n, f, 0.35));
        Dense dd = Dense::of(*d);
        auto u = decompose_compressed(d);
        const auto& mt = u.matching();
        auto lu = to_lu(u);
        Dense l = Dense::of(lu.l), p = Dense::of(lu.p), nn = Dense::of(lu.n), uu = Dense::of(lu.u);
        t(l * p == nn * uu, "L P = N U");
        t(is_upper_unitriangular(l.transpose()) && is_upper_unitriangular(uu), "L, U unitriangular");

        // reduced row echelon up to permutation: leading ones, cleared pivot columns, same row space
        Dense e = Dense::of(to_echelon(u, Orientation::Row));
        std::vector<long> lead;
        bool ok = true;
        for (Index i = 0; i < m; ++i) {
            auto r = e.row(i);
            long l0 = min_support(r);
            if (l0 == long(n)) continue;
            ok = ok && r[l0] == 1;
            for (Index q = 0; q < m; ++q) ok = ok && (q == i || e.at(q, l0) == 0);
            lead.push_back(l0);
        }
        std::sort(lead.begin(), lead.end());
        ok = ok && std::adjacent_find(lead.begin(), lead.end()) == lead.end() && lead.size() == mt.size();
        Dense both(2 * m, n, f);
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < n; ++j) both.at(i, j) = dd.at(i, j), both.at(m + i, j) = e.at(i, j);
        t(ok && rank(both) == rank(dd) && rank(e) == rank(dd), "row echelon form");

        Dense ec = Dense::of(to_echelon(u, Orientation::Column)).transpose();
        Dense dt = dd.transpose();
        std::vector<long> low;
        ok = true;
        for (Index j = 0; j < n; ++j) {
            auto c = ec.row(j);
            long l0 = max_support(c);
            if (l0 < 0) continue;
            ok = ok && c[l0] == 1;
            for (Index q = 0; q < n; ++q) ok = ok && (q == j || ec.at(q, l0) == 0);
            low.push_back(l0);
        }
        std::sort(low.begin(), low.end());
        ok = ok && std::adjacent_find(low.begin(), low.end()) == low.end() && low.size() == mt.size();
        Dense bothc(2 * n, m, f);
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < m; ++i) bothc.at(j, i) = dt.at(j, i), bothc.at(n + j, i) = ec.at(j, i);
        t(ok && rank(bothc) == rank(dd), "column echelon form");

        Dense v = standard_reduction_v(dd);
        auto back = rdv_to_umatch(d, v.sparse());
        t(check_umatch(dense_factors(back), back.matching()).empty(), "RDV to U-match is proper");
        t(Dense::of(umatch_to_rdv(back).v) == v, "RDV round trip reproduces V");
    }
    return from(t);
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit;
        std::function<Outcome()> run;
    };
    const Criterion all[] = {
        {"example-1-exact", kExampleLimit, example},
        {"matching-uniqueness", kUniquenessLimit, uniqueness},
        {"identity-and-proper-axioms", kIdentityLimit, identities},
        {"table-1-retrieval", kRetrievalLimit, retrieval},
        {"solver-extremality", kExtremalityLimit, extremality},
        {"barcode-correctness", kBarcodeLimit, barcodes},
        {"generator-validity", kGeneratorLimit, generators},
        {"optimization-neutrality", kNeutralityLimit, neutrality},
        {"compression-trend", kCompressionLimit, compression},
        {"def-val-disjoint", kDisjointLimit, disjoint},
        {"lu-echelon-rdv-bridges", kBridgeLimit, bridges},
    };
    int failures = 0;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs <= c.limit;
        bool pass = o.pass && in_time;
        failures += !pass;
        std::printf("%s %s: %s [%.4fs, limit %gs%s]\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs,
                    c.limit, in_time ? "" : ", over time");
        std::fflush(stdout);
    }
    return failures;
}
