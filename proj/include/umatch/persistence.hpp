#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "umatch/complexes.hpp"
#include "umatch/lazy.hpp"

namespace umatch {

// A chain (or cochain) supported on the cells of one dimension, indexed by
// position within that dimension.
struct Chain {
    Index dim = 0;
    SparseVector v;
    bool operator==(const Chain&) const = default;
};

struct Bar {
    std::uint64_t engine = 0;  // id of the engine that produced it
    Index dim = 0;
    Index birth_cell = 0;         // position among dim-cells
    Index death_cell = npos;      // position among (dim+1)-cells, npos if infinite
    Index birth_index = 0;        // global order
    Index death_index = npos;
    double birth = 0;
    double death = 0;             // +inf if infinite
    bool infinite() const { return death_cell == npos; }
};

struct EngineOptions {
    bool clearing = true;
    bool pareto = true;  // use leading-entry certificates from the boundary oracles
};

enum class GeneratorStrategy { Exact, EarlyStop };
GeneratorStrategy parse_strategy(const std::string& s);  // "exact", "early-stop"

struct Bounding {
    double time;       // birth of the latest cell of the witness; -inf for x = 0
    Index index;       // its global index, npos for x = 0
    Chain witness;
};

enum class SaecularSpace {
    Cycles,      // Z_n within F_p
    Boundaries,  // boundaries of chains in F_p
    Preimage,    // n-chains whose boundary lies in F_p
};

// Per-dimension decompositions of the boundary matrices of a filtered complex
// and everything derived from them. Immutable after construction.
class PersistenceEngine {
public:
    PersistenceEngine(ComplexPtr cx, const Field& f, EngineOptions opt = {});
    PersistenceEngine(const PersistenceEngine&) = delete;
    PersistenceEngine& operator=(const PersistenceEngine&) = delete;

    const FilteredComplex& complex() const { return *cx_; }
    const Field& field() const { return field_; }
    std::uint64_t id() const { return id_; }
    Index top_dim() const { return cx_->top_dim(); }
    // Decomposition of the boundary from n to n-1, 1 <= n <= top_dim.
    const CompressedUmatch& umatch(Index n) const;
    const LazyUmatch& lazy(Index n) const;

    // Bars of dimension n sorted by birth index. Zero-length bars are dropped
    // unless keep_empty.
    std::vector<Bar> barcode(Index n, bool keep_empty = false) const;

    Chain cycle_representative(const Bar& b, GeneratorStrategy s = GeneratorStrategy::Exact) const;
    Chain cocycle_representative(const Bar& b) const;

    // Column of the Jordan basis at a global index: a chain in the dimension of that cell.
    Chain jordan_column(Index global) const;
    // Global indices of the Jordan columns spanning the requested subspace of
    // n-chains at filtration index p (cells with global index < p).
    std::vector<Index> saecular_select(SaecularSpace s, Index n, Index p) const;

    // Earliest boundary: nullopt when x never bounds. UsageError if x is not a cycle.
    std::optional<Bounding> bounding_chain(const Chain& x) const;
    // Earliest filtration value at which x and f are homologous cycles.
    std::optional<double> time_of_homology(const Chain& x, const Chain& f) const;
    // [birth(x), time x first bounds); second is +inf if never.
    std::pair<double, double> lifespan(const Chain& x) const;

    // Birth value of the latest cell in the support; -inf for the zero chain.
    double birth_of(const Chain& x) const;
    Chain boundary(const Chain& x) const;
    Chain coboundary(const Chain& x) const;  // x . boundary_{dim+1}

private:
    void check_bar(const Bar& b) const;
    void check_chain(const Chain& x) const;

    ComplexPtr cx_;
    Field field_;
    std::uint64_t id_;
    std::vector<OraclePtr> d_;  // d_[n-1] is the boundary from n
    std::vector<std::unique_ptr<CompressedUmatch>> u_;
    std::vector<std::unique_ptr<LazyUmatch>> lazy_;
};

// Two-term Jordan basis of a single matrix D viewed as a chain complex
// C_1 -> C_0: codomain columns (D col_c(C) at matched rows, e_r elsewhere) and
// domain columns (columns of C).
struct TwoTermJordan {
    std::vector<SparseVector> codomain, domain;
};
TwoTermJordan two_term_jordan(const LazyUmatch& lu);

}  // namespace umatch
