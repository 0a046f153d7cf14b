#include "umatch/triangular.hpp"

namespace umatch {

TriangularShape TriangularShape::identity(Index n) {
    TriangularShape s;
    s.diag_row.resize(n);
    for (Index j = 0; j < n; ++j) s.diag_row[j] = j;
    s.row_rank = s.diag_row;
    return s;
}

TriangularShape TriangularShape::from_diag_rows(std::vector<Index> diag_row) {
    TriangularShape s;
    s.row_rank.assign(diag_row.size(), npos);
    for (Index j = 0; j < diag_row.size(); ++j) {
        if (diag_row[j] >= diag_row.size() || s.row_rank[diag_row[j]] != npos)
            throw InternalInconsistency("triangular shape is not a permutation");
        s.row_rank[diag_row[j]] = j;
    }
    s.diag_row = std::move(diag_row);
    return s;
}

namespace {

void accumulate(const Field& f, std::map<Index, Coeff>& acc, Index key, Coeff v) {
    if (v == 0) return;
    auto [it, fresh] = acc.try_emplace(key, v);
    if (!fresh) {
        it->second = f.add(it->second, v);
        if (it->second == 0) acc.erase(it);
    }
}

SparseVector to_sparse(const std::map<Index, Coeff>& m) {
    std::vector<Entry> e;
    e.reserve(m.size());
    for (auto [i, c] : m) e.push_back({i, c});
    return SparseVector::from_sorted(std::move(e));
}

}  // namespace

SparseVector solve_left(const MatrixOracle& t, const TriangularShape& s, const SparseVector& b,
                        const SolveHook& hook) {
    const Field& f = t.field();
    std::map<Index, Coeff> res;  // keyed by rank of the row
    for (const auto& e : b) {
        if (e.index >= s.row_rank.size()) throw UsageError("right-hand side longer than the system");
        res[s.row_rank[e.index]] = e.coeff;
    }
    std::map<Index, Coeff> x;
    while (!res.empty()) {
        auto top = std::prev(res.end());
        Index j = top->first;
        Index pr = s.diag_row[j];
        SparseVector col = t.column(j);
        Coeff p = col.at(pr);
        if (p == 0) throw InternalInconsistency("zero pivot in triangular solve");
        Coeff xj = f.div(top->second, p);
        x[j] = xj;
        Coeff neg = f.neg(xj);
        for (const auto& e : col) {
            Index rk = s.row_rank[e.index];
            if (rk > j) throw InternalInconsistency("triangular system has an entry below its pivot");
            accumulate(f, res, rk, f.mul(neg, e.coeff));
        }
        if (res.count(j)) throw InternalInconsistency("pivot did not cancel");
        if (hook && hook(j, x)) break;
    }
    return to_sparse(x);
}

SparseVector solve_right(const MatrixOracle& t, const TriangularShape& s, const SparseVector& c) {
    const Field& f = t.field();
    std::map<Index, Coeff> res;  // keyed by column
    for (const auto& e : c) {
        if (e.index >= s.diag_row.size()) throw UsageError("right-hand side longer than the system");
        res[e.index] = e.coeff;
    }
    std::map<Index, Coeff> y;
    while (!res.empty()) {
        auto first = res.begin();
        Index j = first->first;
        Index pr = s.diag_row[j];
        SparseVector row = t.row(pr);
        Coeff p = row.at(j);
        if (p == 0) throw InternalInconsistency("zero pivot in triangular solve");
        Coeff yj = f.div(first->second, p);
        y[pr] = yj;
        Coeff neg = f.neg(yj);
        for (const auto& e : row) {
            if (e.index < j) throw InternalInconsistency("triangular system has an entry left of its pivot");
            accumulate(f, res, e.index, f.mul(neg, e.coeff));
        }
        if (res.count(j)) throw InternalInconsistency("pivot did not cancel");
    }
    return to_sparse(y);
}

}  // namespace umatch
