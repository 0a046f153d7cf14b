#include "umatch/sparsify.hpp"

#include "umatch/errors.hpp"

namespace umatch {

namespace {

Index matched_row(const CompressedUmatch& u, Index c) {
    const auto& mt = u.matching();
    if (c >= mt.ncols() || !mt.col_matched(c)) throw UsageError("column is not matched");
    return mt.row_of_col(c);
}

}  // namespace

bool is_valid_pivot_column(const CompressedUmatch& u, Index c, const SparseVector& v) {
    Index r = matched_row(u, c);
    if (v.at(c) != 1 || v.max_index() != c) return false;
    SparseVector dv = mul_columns(u.d(), v);
    return dv.empty() || dv.max_index() <= r;
}

SparseVector early_stop_solve(const LazyUmatch& lu, Index c) {
    const CompressedUmatch& u = lu.umatch();
    const auto& mt = u.matching();
    const Field& f = u.field();
    Index r = matched_row(u, c);
    Index b = mt.kappa_pos(c);
    SparseVector rhs = SparseVector::from_sorted({{mt.kstar(b), mt.coeff_of_col(c)}});

    // D v for the current iterate, updated one column per step.
    SparseVector dv;
    auto hook = [&](Index j, const std::map<Index, Coeff>& x) {
        dv = add_scaled(f, dv, x.at(j), u.d().column(mt.kappa()[j]));
        return dv.empty() || dv.max_index() <= r;
    };
    return lu.lift_kappa(solve_left(lu.inner(), lu.inner_shape(), rhs, hook));
}

SparseVector delete_coefficients(const CompressedUmatch& u, Index c, const SparseVector& v) {
    Index r = matched_row(u, c);
    SparseVector out;
    for (const auto& e : v) {
        if (e.index < c) {
            Index low = u.d().column(e.index).max_index();
            if (low == npos || low < r) continue;
        }
        out.push_back(e);
    }
    if (!is_valid_pivot_column(u, c, out)) throw InternalInconsistency("coefficient deletion broke column validity");
    return out;
}

}  // namespace umatch
