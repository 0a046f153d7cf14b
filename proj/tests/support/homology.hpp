#pragma once

// Rank-based homology of small filtered complexes, computed densely and
// independently of the factorization code.

#include <vector>

#include "dense.hpp"
#include "umatch/complexes.hpp"

namespace umatch::testing {

class HomologyOracle {
public:
    HomologyOracle(ComplexPtr cx, const Field& f);

    // Number of n-cells entering at or before t.
    Index count_upto(Index n, double t) const;
    // Number of n-cells with global index below g.
    Index count_before(Index n, Index g) const;
    // dim H_n of the subcomplex of cells entering at or before t.
    Index betti(Index n, double t) const;
    std::vector<double> values() const;  // distinct filtration values

    // Basis of the n-cycles supported on the first a cells (length num_cells(n)).
    std::vector<std::vector<Coeff>> cycles(Index n, Index a) const;
    // Boundaries of the first b (n+1)-cells.
    std::vector<std::vector<Coeff>> boundaries(Index n, Index b) const;
    bool is_cycle(Index n, const std::vector<Coeff>& x) const;
    // A cycle x whose last cell is r is not homologous, using the first b
    // (n+1)-cells, to a cycle on cells before r. Since z - y is a cycle whenever
    // y is a boundary, this holds iff the tail of x from r on is outside the span
    // of the tails of those boundaries.
    bool new_class(Index n, const std::vector<Coeff>& x, Index b) const;
    // x lies in the span of boundaries(n, b).
    bool bounds_within(Index n, const std::vector<Coeff>& x, Index b) const;

    const Dense& boundary(Index n) const { return d_.at(n); }  // from n to n-1, n >= 1
    Index cells(Index n) const { return n <= cx_->top_dim() ? cx_->num_cells(n) : 0; }
    const Field& field() const { return f_; }

private:
    Index prefix_rank(Index n, Index cols) const;

    ComplexPtr cx_;
    Field f_;
    std::vector<Dense> d_;
};

// Boundary of the whole complex with cells in global order.
Dense total_boundary(const FilteredComplex& cx, const Field& f);

}  // namespace umatch::testing
