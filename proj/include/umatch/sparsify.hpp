#pragma once

#include "umatch/lazy.hpp"

namespace umatch {

// v can stand in for column c of C without changing M: v[c] = 1, v vanishes
// below c, and D v vanishes strictly below the row matched to c.
// Throws UsageError if c is not a matched column.
bool is_valid_pivot_column(const CompressedUmatch& u, Index c, const SparseVector& v);

// Back substitution toward col_c(C) that stops at the first valid iterate.
// The iterate is a sub-vector of the exact column.
SparseVector early_stop_solve(const LazyUmatch& lu, Index c);

// Drops v[k] for k < c whenever column k of D has no entry at or below the row
// matched to c. Throws InternalInconsistency if the result is not valid.
SparseVector delete_coefficients(const CompressedUmatch& u, Index c, const SparseVector& v);

}  // namespace umatch
