#include "umatch/lazy.hpp"

namespace umatch {

Factor parse_factor(const std::string& s) {
    if (s == "R") return Factor::R;
    if (s == "Rinv") return Factor::Rinv;
    if (s == "C") return Factor::C;
    if (s == "Cinv") return Factor::Cinv;
    throw UsageError("unknown factor '" + s + "' (expected R, Rinv, C or Cinv)");
}

Axis parse_axis(const std::string& s) {
    if (s == "row") return Axis::Row;
    if (s == "column" || s == "col") return Axis::Column;
    throw UsageError("unknown axis '" + s + "' (expected row or column)");
}

std::string to_string(Factor f) {
    switch (f) {
        case Factor::R: return "R";
        case Factor::Rinv: return "Rinv";
        case Factor::C: return "C";
        case Factor::Cinv: return "Cinv";
    }
    return "?";
}

std::string to_string(Axis a) { return a == Axis::Row ? "row" : "column"; }

// ---- InnerBlock ----

namespace {

SparseVector reindex(const SparseVector& v, const std::vector<Index>& map) {
    std::vector<Entry> e;
    e.reserve(v.size());
    for (const auto& x : v)
        if (Index k = map[x.index]; k != npos) e.push_back({k, x.coeff});
    return SparseVector::from_sorted(std::move(e));  // maps are monotone
}

}  // namespace

InnerBlock::InnerBlock(const CompressedUmatch& u) : u_(&u) {}

SparseVector InnerBlock::row(Index a) const {
    const auto& mt = u_->matching();
    SparseVector y = reindex(u_->rrr_inv().row(a), mt.rho());
    SparseVector full = mul_rows(y, u_->d());
    std::vector<Entry> e;
    for (const auto& x : full)
        if (Index b = mt.kappa_pos(x.index); b != npos) e.push_back({b, x.coeff});
    return SparseVector::from_sorted(std::move(e));
}

SparseVector InnerBlock::column(Index b) const {
    const auto& mt = u_->matching();
    SparseVector dc = u_->d().column(mt.kappa()[b]);
    std::vector<Entry> e;
    for (const auto& x : dc)
        if (Index a = mt.rho_pos(x.index); a != npos) e.push_back({a, x.coeff});
    return mul_columns(u_->rrr_inv(), SparseVector::from_sorted(std::move(e)));
}

// ---- LazyUmatch ----

LazyUmatch::LazyUmatch(const CompressedUmatch& u)
    : u_(&u), a_(u), rr_shape_(TriangularShape::identity(u.matching().size())) {
    const auto& mt = u.matching();
    std::vector<Index> diag(mt.size());
    for (Index b = 0; b < mt.size(); ++b) diag[b] = mt.kstar(b);
    a_shape_ = TriangularShape::from_diag_rows(std::move(diag));
}

SparseVector LazyUmatch::restrict_rho(const SparseVector& v) const {
    std::vector<Entry> e;
    for (const auto& x : v)
        if (Index a = u_->matching().rho_pos(x.index); a != npos) e.push_back({a, x.coeff});
    return SparseVector::from_sorted(std::move(e));
}

SparseVector LazyUmatch::restrict_kappa(const SparseVector& v) const {
    std::vector<Entry> e;
    for (const auto& x : v)
        if (Index b = u_->matching().kappa_pos(x.index); b != npos) e.push_back({b, x.coeff});
    return SparseVector::from_sorted(std::move(e));
}

SparseVector LazyUmatch::lift_rho(const SparseVector& v) const {
    return reindex(v, u_->matching().rho());
}

SparseVector LazyUmatch::lift_kappa(const SparseVector& v) const {
    return reindex(v, u_->matching().kappa());
}

SparseVector LazyUmatch::apply_matching(const SparseVector& x) const {
    const auto& mt = u_->matching();
    const Field& f = u_->field();
    std::vector<Entry> e;
    for (const auto& t : x) {
        Index a = mt.kstar(t.index);
        e.push_back({a, f.mul(t.coeff, mt.coeff_of_col(mt.kappa()[t.index]))});
    }
    return SparseVector::from_entries(std::move(e), f);
}

Retrieved LazyUmatch::retrieve(Factor fac, Axis ax, Index i) const {
    const auto& d = u_->d();
    Index limit = (fac == Factor::R || fac == Factor::Rinv) ? d.nrows() : d.ncols();
    if (i >= limit)
        throw UsageError("index " + std::to_string(i) + " out of range for " + to_string(fac) + " " +
                         to_string(ax));
    Retrieved out;
    switch (fac) {
        case Factor::Rinv:
            out.vector = ax == Axis::Row ? rinv_row(i, out.solves) : rinv_col(i, out.solves);
            break;
        case Factor::R:
            out.vector = ax == Axis::Row ? r_row(i, out.solves) : r_col(i, out.solves);
            break;
        case Factor::Cinv:
            out.vector = ax == Axis::Row ? cinv_row(i) : cinv_col(i);
            break;
        case Factor::C:
            out.vector = ax == Axis::Row ? c_row(i, out.solves) : c_col(i, out.solves);
            break;
    }
    return out;
}

SparseVector LazyUmatch::rinv_row(Index r, std::uint32_t& s) const {
    const auto& mt = u_->matching();
    const Field& f = u_->field();
    if (Index a = mt.rho_pos(r); a != npos) return lift_rho(u_->rrr_inv().row(a));
    // -(row_r(D) restricted to kappa) A^{-1} (R_rr)^{-1}, then the unit entry
    SparseVector rhs = scaled(f, restrict_kappa(u_->d().row(r)), f.neg(1));
    ++s;
    SparseVector z = solve_right(a_, a_shape_, rhs);
    SparseVector x = lift_rho(mul_rows(z, u_->rrr_inv()));
    return add_scaled(f, x, 1, SparseVector::unit(r));
}

SparseVector LazyUmatch::rinv_col(Index r, std::uint32_t& s) const {
    const auto& mt = u_->matching();
    const Field& f = u_->field();
    Index a = mt.rho_pos(r);
    if (a == npos) return SparseVector::unit(r);
    SparseVector top = u_->rrr_inv().column(a);
    ++s;
    SparseVector x = solve_left(a_, a_shape_, top);
    SparseVector low = mul_columns(u_->d(), lift_kappa(x));
    low = filtered(low, [&](Index i) { return !mt.row_matched(i); });
    return add_scaled(f, lift_rho(top), f.neg(1), low);
}

SparseVector LazyUmatch::r_row(Index r, std::uint32_t& s) const {
    const auto& mt = u_->matching();
    const Field& f = u_->field();
    ++s;
    if (Index a = mt.rho_pos(r); a != npos)
        return lift_rho(solve_right(u_->rrr_inv(), rr_shape_, SparseVector::unit(a)));
    SparseVector x = solve_right(a_, a_shape_, restrict_kappa(u_->d().row(r)));
    return add_scaled(f, lift_rho(x), 1, SparseVector::unit(r));
}

SparseVector LazyUmatch::r_col(Index r, std::uint32_t& s) const {
    Index a = u_->matching().rho_pos(r);
    if (a == npos) return SparseVector::unit(r);
    ++s;
    SparseVector x = solve_left(a_, a_shape_, SparseVector::unit(a));
    return mul_columns(u_->d(), lift_kappa(x));
}

SparseVector LazyUmatch::cinv_row(Index c) const {
    const auto& mt = u_->matching();
    const Field& f = u_->field();
    Index b = mt.kappa_pos(c);
    if (b == npos) return SparseVector::unit(c);
    Index a = mt.kstar(b);
    SparseVector y = lift_rho(u_->rrr_inv().row(a));
    return scaled(f, mul_rows(y, u_->d()), f.inv(mt.coeff_of_col(c)));
}

SparseVector LazyUmatch::cinv_col(Index c) const {
    const auto& mt = u_->matching();
    const Field& f = u_->field();
    SparseVector t = mul_columns(u_->rrr_inv(), restrict_rho(u_->d().column(c)));
    std::vector<Entry> e;
    for (const auto& x : t) {
        Index r = mt.rho()[x.index];
        e.push_back({mt.col_of_row(r), f.div(x.coeff, mt.coeff_of_row(r))});
    }
    if (!mt.col_matched(c)) e.push_back({c, 1});
    return SparseVector::from_entries(std::move(e), f);
}

SparseVector LazyUmatch::c_row(Index c, std::uint32_t& s) const {
    const auto& mt = u_->matching();
    const Field& f = u_->field();
    Index b = mt.kappa_pos(c);
    if (b == npos) return SparseVector::unit(c);
    ++s;
    SparseVector x = solve_right(a_, a_shape_, SparseVector::unit(b));  // row b of A^{-1}
    std::vector<Entry> e;
    for (const auto& t : x) {
        Index r = mt.rho()[t.index];
        e.push_back({mt.col_of_row(r), f.mul(t.coeff, mt.coeff_of_row(r))});
    }
    SparseVector y = lift_rho(mul_rows(x, u_->rrr_inv()));
    SparseVector rest = filtered(mul_rows(y, u_->d()), [&](Index j) { return !mt.col_matched(j); });
    for (const auto& t : rest) e.push_back({t.index, f.neg(t.coeff)});
    return SparseVector::from_entries(std::move(e), f);
}

SparseVector LazyUmatch::c_col(Index c, std::uint32_t& s) const {
    const auto& mt = u_->matching();
    const Field& f = u_->field();
    ++s;
    if (Index b = mt.kappa_pos(c); b != npos) {
        SparseVector rhs = SparseVector::from_sorted({{mt.kstar(b), mt.coeff_of_col(c)}});
        return lift_kappa(solve_left(a_, a_shape_, rhs));
    }
    SparseVector rhs = mul_columns(u_->rrr_inv(), restrict_rho(u_->d().column(c)));
    SparseVector x = solve_left(a_, a_shape_, scaled(f, rhs, f.neg(1)));
    return add_scaled(f, lift_kappa(x), 1, SparseVector::unit(c));
}

}  // namespace umatch
