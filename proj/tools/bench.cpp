#include "bench.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

#include "heap_counter.hpp"
#include "umatch/persistence.hpp"

using namespace umatch;

namespace {

constexpr Index kBoundaryDim = 2;

struct Variant {
    const char* name;
    bool pivot_block;
    bool antitransposed;
};

constexpr Variant kVariants[] = {
    {"D", false, false},
    {"D_perp", false, true},
    {"D_pivot", true, false},
    {"D_pivot_perp", true, true},
};

OraclePtr variant_matrix(OraclePtr d, const Matching& mt, const Variant& v) {
    if (v.pivot_block) d = submatrix(d, mt.rho(), mt.kappa());
    if (v.antitransposed) d = antitranspose(d);
    return d;
}

}  // namespace

std::vector<BenchRecord> run_bench(const DatasetSpec& spec, const BenchOptions& opt) {
    Field f(opt.field);
    DecomposeOptions dopt;
    dopt.use_shortcut = opt.pareto;

    // Untimed: the matching that the pivot-block views are cut along, and the barcode.
    ComplexPtr cx = make_dataset(spec, kBoundaryDim);
    Matching mu = decompose_compressed(boundary_oracle(cx, kBoundaryDim, f), dopt).matching();
    PersistenceEngine engine(cx, f);
    std::size_t h0 = engine.barcode(0).size(), h1 = engine.barcode(1).size();

    std::vector<BenchRecord> out;
    for (const Variant& v : kVariants) {
        BenchRecord r;
        r.dataset = spec.label();
        r.variant = v.name;
        r.bars_h0 = h0;
        r.bars_h1 = h1;

        std::size_t base = opt.allocator_counts ? heap::reset_peak() : 0;
        auto t0 = std::chrono::steady_clock::now();
        ComplexPtr timed = make_dataset(spec, kBoundaryDim);
        OraclePtr d = variant_matrix(boundary_oracle(timed, kBoundaryDim, f), mu, v);
        CompressedUmatch u = decompose_compressed(d, dopt);
        auto t1 = std::chrono::steady_clock::now();
        r.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (opt.allocator_counts) {
            r.peak_heap_bytes = heap::peak() - base;
            r.heap_source = "allocator";
        } else {
            r.peak_heap_bytes = u.stats().peak_retained_bytes;
            r.heap_source = "retained";
        }

        r.rows = d->nrows();
        r.cols = d->ncols();
        r.nnz_m = u.matching().size();
        r.nnz_rrr_inv_offdiag = u.rrr_inv().nnz_offdiagonal();
        r.row_additions = u.stats().row_additions;
        r.rows_shortcut = u.stats().rows_shortcut;
        DecomposeOptions full_opt;
        full_opt.use_shortcut = opt.pareto;
        r.nnz_rinv_offdiag = decompose_full(d, full_opt).rinv().nnz_offdiagonal();
        out.push_back(std::move(r));
    }
    return out;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "dataset,variant,rows,cols,nnz_M,nnz_Rinv_offdiag,nnz_Rrr_inv_offdiag,time_ms,peak_heap_bytes,"
           "heap_source,row_additions,rows_shortcut,bars_h0,bars_h1\n";
    for (const auto& r : records) {
        char t[32];
        std::snprintf(t, sizeof t, "%.3f", r.time_ms);
        out << r.dataset << ',' << r.variant << ',' << r.rows << ',' << r.cols << ',' << r.nnz_m << ','
            << r.nnz_rinv_offdiag << ',' << r.nnz_rrr_inv_offdiag << ',' << t << ',' << r.peak_heap_bytes << ','
            << r.heap_source << ',' << r.row_additions << ',' << r.rows_shortcut << ',' << r.bars_h0 << ','
            << r.bars_h1 << '\n';
    }
}
