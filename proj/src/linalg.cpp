#include "umatch/linalg.hpp"

#include <algorithm>

namespace umatch {

namespace {

void check_length(const SparseVector& v, Index len, const char* what) {
    if (!v.empty() && v.max_index() >= len)
        throw UsageError(std::string(what) + " has an index beyond the matrix dimension");
}

}  // namespace

std::optional<SparseVector> solve_dx_b(const CompressedUmatch& u, const SparseVector& b) {
    check_length(b, u.d().nrows(), "right-hand side");
    LazyUmatch lu(u);
    SparseVector rhs = mul_columns(u.rrr_inv(), lu.restrict_rho(b));
    SparseVector x = lu.lift_kappa(solve_left(lu.inner(), lu.inner_shape(), rhs));
    if (!(mul_columns(u.d(), x) == b)) return std::nullopt;
    return x;
}

std::optional<SparseVector> solve_yd_c(const CompressedUmatch& u, const SparseVector& c) {
    check_length(c, u.d().ncols(), "right-hand side");
    LazyUmatch lu(u);
    SparseVector z = solve_right(lu.inner(), lu.inner_shape(), lu.restrict_kappa(c));
    SparseVector y = lu.lift_rho(mul_rows(z, u.rrr_inv()));
    if (!(mul_rows(y, u.d()) == c)) return std::nullopt;
    return y;
}

SparseVector kernel_coords(const CompressedUmatch& u, const SparseVector& b, Side side) {
    const auto& mt = u.matching();
    if (side == Side::Right) {
        check_length(b, u.d().ncols(), "vector");
        if (!mul_columns(u.d(), b).empty()) throw UsageError("vector is not in the kernel of D");
        return filtered(b, [&](Index c) { return !mt.col_matched(c); });
    }
    check_length(b, u.d().nrows(), "vector");
    if (!mul_rows(b, u.d()).empty()) throw UsageError("vector is not in the left kernel of D");
    return filtered(b, [&](Index r) { return !mt.row_matched(r); });
}

// ---- subspaces ----

namespace {

void check_bound(Index p, Index limit) {
    if (p > limit) throw UsageError("flag index " + std::to_string(p) + " exceeds dimension " + std::to_string(limit));
}

}  // namespace

SubspaceBasis domain_flag(const CompressedUmatch& u, Index p) {
    Index n = u.d().ncols();
    check_bound(p, n);
    SubspaceBasis s{SubspaceBasis::Space::Domain, {}, n};
    for (Index c = 0; c < p; ++c) s.columns.push_back(c);
    return s;
}

SubspaceBasis codomain_flag(const CompressedUmatch& u, Index p) {
    Index m = u.d().nrows();
    check_bound(p, m);
    SubspaceBasis s{SubspaceBasis::Space::Codomain, {}, m};
    for (Index r = 0; r < p; ++r) s.columns.push_back(r);
    return s;
}

SubspaceBasis pullback(const CompressedUmatch& u, Index p) {
    const auto& mt = u.matching();
    check_bound(p, u.d().nrows());
    SubspaceBasis s{SubspaceBasis::Space::Domain, {}, u.d().ncols()};
    for (Index c = 0; c < mt.ncols(); ++c)
        if (!mt.col_matched(c) || mt.row_of_col(c) < p) s.columns.push_back(c);
    return s;
}

SubspaceBasis pushforward(const CompressedUmatch& u, Index p) {
    const auto& mt = u.matching();
    check_bound(p, u.d().ncols());
    SubspaceBasis s{SubspaceBasis::Space::Codomain, {}, u.d().nrows()};
    for (Index r : mt.rho())
        if (mt.col_of_row(r) < p) s.columns.push_back(r);
    return s;
}

SubspaceBasis meet(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.space != b.space || a.ambient != b.ambient) throw UsageError("subspaces live in different spaces");
    SubspaceBasis s{a.space, {}, a.ambient};
    std::set_intersection(a.columns.begin(), a.columns.end(), b.columns.begin(), b.columns.end(),
                          std::back_inserter(s.columns));
    return s;
}

SubspaceBasis join(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.space != b.space || a.ambient != b.ambient) throw UsageError("subspaces live in different spaces");
    SubspaceBasis s{a.space, {}, a.ambient};
    std::set_union(a.columns.begin(), a.columns.end(), b.columns.begin(), b.columns.end(),
                   std::back_inserter(s.columns));
    return s;
}

std::vector<SparseVector> basis_vectors(const LazyUmatch& lu, const SubspaceBasis& s) {
    Factor f = s.space == SubspaceBasis::Space::Domain ? Factor::C : Factor::R;
    std::vector<SparseVector> out;
    for (Index c : s.columns) out.push_back(lu.retrieve(f, Axis::Column, c).vector);
    return out;
}

// ---- LU and echelon ----

LuFactors to_lu(const CompressedUmatch& u) {
    const auto& mt = u.matching();
    const Field& f = u.field();
    LazyUmatch lu(u);
    const Index k = mt.size();
    auto q = [k](Index i) { return k - 1 - i; };
    std::vector<Triplet> l, p, n, uu;
    for (Index a = 0; a < k; ++a) {
        // row a of R_rr
        for (const auto& e : solve_right(u.rrr_inv(), lu.pivot_shape(), SparseVector::unit(a)))
            l.push_back({q(a), q(e.index), e.coeff});
        p.push_back({q(a), mt.rstar(a), mt.coeff_of_row(mt.rho()[a])});
        for (const auto& e : lu.restrict_kappa(u.d().row(mt.rho()[a]))) n.push_back({q(a), e.index, e.coeff});
    }
    for (Index b = 0; b < k; ++b) {
        SparseVector rhs = SparseVector::from_sorted({{mt.kstar(b), mt.coeff_of_col(mt.kappa()[b])}});
        for (const auto& e : solve_left(lu.inner(), lu.inner_shape(), rhs)) uu.push_back({e.index, b, e.coeff});
    }
    LuFactors out{CsMatrix(k, k, f, l), CsMatrix(k, k, f, p), CsMatrix(k, k, f, n), CsMatrix(k, k, f, uu)};
    for (Index b = 0; b < k; ++b)
        if (!(mul_columns(out.l, out.p.column(b)) == mul_columns(out.n, out.u.column(b))))
            throw InternalInconsistency("LU factors do not satisfy L P = N U");
    return out;
}

CsMatrix to_echelon(const CompressedUmatch& u, Orientation o) {
    const auto& mt = u.matching();
    const Field& f = u.field();
    LazyUmatch lu(u);
    std::vector<Triplet> t;
    for (Index a = 0; a < mt.size(); ++a) {
        Index b = mt.rstar(a);
        Index r = mt.rho()[a], c = mt.kappa()[b];
        if (o == Orientation::Row) {
            // row b of A^{-1} (R_rr)^{-1} D_rho
            SparseVector x = solve_right(lu.inner(), lu.inner_shape(), SparseVector::unit(b));
            SparseVector row = mul_rows(lu.lift_rho(mul_rows(x, u.rrr_inv())), u.d());
            if (row.empty() || row[0].index != c || row[0].coeff != 1)
                throw InternalInconsistency("echelon row does not lead with 1 at its matched column");
            for (const auto& e : row) t.push_back({r, e.index, e.coeff});
        } else {
            // column a of D_kappa A^{-1} (R_rr)^{-1}
            SparseVector x = solve_left(lu.inner(), lu.inner_shape(), u.rrr_inv().column(a));
            SparseVector col = mul_columns(u.d(), lu.lift_kappa(x));
            if (col.empty() || col.max_index() != r || col.at(r) != 1)
                throw InternalInconsistency("echelon column does not end with 1 at its matched row");
            for (const auto& e : col) t.push_back({e.index, c, e.coeff});
        }
    }
    return CsMatrix(u.d().nrows(), u.d().ncols(), f, t);
}

// ---- R = DV ----

CsMatrix unitriangular_inverse(const CsMatrix& t) {
    if (t.nrows() != t.ncols()) throw UsageError("matrix is not square");
    for (Index i = 0; i < t.nrows(); ++i) {
        SparseVector row = t.row(i);
        if (row.empty() || row[0].index != i || row[0].coeff != 1)
            throw UsageError("matrix is not upper unitriangular");
    }
    auto shape = TriangularShape::identity(t.nrows());
    std::vector<SparseVector> rows;
    for (Index i = 0; i < t.nrows(); ++i) rows.push_back(solve_right(t, shape, SparseVector::unit(i)));
    return CsMatrix::from_rows(t.ncols(), t.field(), rows);
}

RdvDecomposition umatch_to_rdv(const FullUmatch& u) {
    CsMatrix v = unitriangular_inverse(u.cinv());
    std::vector<SparseVector> cols;
    std::vector<Index> low;
    for (Index c = 0; c < v.ncols(); ++c) {
        cols.push_back(mul_columns(u.d(), v.column(c)));
        low.push_back(cols.back().max_index());
    }
    return {CsMatrix::from_columns(u.d().nrows(), u.field(), cols), std::move(v), std::move(low)};
}

FullUmatch rdv_to_umatch(OraclePtr d, const CsMatrix& v) {
    const Field& f = d->field();
    const Index m = d->nrows(), n = d->ncols();
    if (v.nrows() != n || v.ncols() != n) throw UsageError("V must be square with as many rows as D has columns");
    CsMatrix cinv = unitriangular_inverse(v);  // also validates V
    std::vector<SparseVector> rcols(m);
    std::vector<bool> used(m, false);
    std::vector<MatchedPair> pairs;
    for (Index c = 0; c < n; ++c) {
        SparseVector x = mul_columns(*d, v.column(c));
        if (x.empty()) continue;
        Index lo = x.max_index();
        if (used[lo]) throw UsageError("D V is not reduced: two columns share their lowest row");
        used[lo] = true;
        Coeff piv = x.at(lo);
        pairs.push_back({lo, c, piv});
        rcols[lo] = scaled(f, x, f.inv(piv));
    }
    for (Index r = 0; r < m; ++r)
        if (!used[r]) rcols[r] = SparseVector::unit(r);
    CsMatrix r = CsMatrix::from_columns(m, f, rcols);
    CsMatrix rinv = unitriangular_inverse(r);
    return FullUmatch(std::move(d), Matching(m, n, std::move(pairs)), std::move(rinv), std::move(cinv));
}

}  // namespace umatch
