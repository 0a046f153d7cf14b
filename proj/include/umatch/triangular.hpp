#pragma once

#include <functional>
#include <map>
#include <vector>

#include "umatch/matrix.hpp"

namespace umatch {

// Square T that becomes upper triangular after permuting its rows: column j
// has its pivot at row diag_row[j] and no entries in rows whose rank exceeds j,
// where rank(diag_row[j]) = j.
struct TriangularShape {
    std::vector<Index> diag_row;
    std::vector<Index> row_rank;

    static TriangularShape identity(Index n);
    static TriangularShape from_diag_rows(std::vector<Index> diag_row);
};

// Called after each unknown is fixed with the partial solution (keyed by column).
// Returning true stops the solve early.
using SolveHook = std::function<bool(Index col, const std::map<Index, Coeff>& partial)>;

// T x = b by back substitution over columns of T, largest rank first.
SparseVector solve_left(const MatrixOracle& t, const TriangularShape& s, const SparseVector& b,
                        const SolveHook& hook = {});
// y T = c by forward substitution over rows of T, smallest column first.
SparseVector solve_right(const MatrixOracle& t, const TriangularShape& s, const SparseVector& c);

}  // namespace umatch
