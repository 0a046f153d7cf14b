#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "umatch/datasets.hpp"

struct BenchRecord {
    std::string dataset, variant;
    umatch::Index rows = 0, cols = 0;
    std::size_t nnz_m = 0, nnz_rinv_offdiag = 0, nnz_rrr_inv_offdiag = 0;
    double time_ms = 0;
    std::size_t peak_heap_bytes = 0;
    std::string heap_source;  // "allocator" or "retained"
    std::uint64_t row_additions = 0, rows_shortcut = 0;
    std::size_t bars_h0 = 0, bars_h1 = 0;
};

struct BenchOptions {
    std::uint32_t field = 2;
    bool pareto = true;
    bool allocator_counts = true;  // false when runs overlap
};

// Decomposes the 2-dimensional boundary of the dataset as D, its anti-transpose,
// its pivot block and the anti-transpose of the pivot block.
std::vector<BenchRecord> run_bench(const umatch::DatasetSpec& spec, const BenchOptions& opt);
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
