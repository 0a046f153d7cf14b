#include "umatch/umatch.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace umatch {

// ---- Matching ----

Matching::Matching(Index nrows, Index ncols, std::vector<MatchedPair> pairs)
    : nrows_(nrows), ncols_(ncols), pairs_(std::move(pairs)) {
    row_col_.assign(nrows_, npos);
    col_row_.assign(ncols_, npos);
    row_coeff_.assign(nrows_, 0);
    for (const auto& p : pairs_) {
        if (p.row >= nrows_ || p.col >= ncols_) throw UsageError("matched pair out of range");
        if (p.coeff == 0) throw UsageError("matched pair with zero coefficient");
        if (row_col_[p.row] != npos || col_row_[p.col] != npos)
            throw UsageError("row or column matched twice");
        row_col_[p.row] = p.col;
        col_row_[p.col] = p.row;
        row_coeff_[p.row] = p.coeff;
    }
    std::sort(pairs_.begin(), pairs_.end(),
              [](const MatchedPair& a, const MatchedPair& b) { return a.row < b.row; });
    rho_pos_.assign(nrows_, npos);
    kappa_pos_.assign(ncols_, npos);
    for (Index r = 0; r < nrows_; ++r)
        if (row_col_[r] != npos) {
            rho_pos_[r] = rho_.size();
            rho_.push_back(r);
        }
    for (Index c = 0; c < ncols_; ++c)
        if (col_row_[c] != npos) {
            kappa_pos_[c] = kappa_.size();
            kappa_.push_back(c);
        }
}

Coeff Matching::coeff_of_row(Index r) const {
    if (row_col_.at(r) == npos) throw UsageError("row is not matched");
    return row_coeff_[r];
}

std::vector<Index> Matching::rho_bar() const {
    std::vector<Index> out;
    for (Index r = 0; r < nrows_; ++r)
        if (row_col_[r] == npos) out.push_back(r);
    return out;
}

std::vector<Index> Matching::kappa_bar() const {
    std::vector<Index> out;
    for (Index c = 0; c < ncols_; ++c)
        if (col_row_[c] == npos) out.push_back(c);
    return out;
}

Matching Matching::antitransposed() const {
    std::vector<MatchedPair> p;
    p.reserve(pairs_.size());
    for (const auto& x : pairs_) p.push_back({ncols_ - 1 - x.col, nrows_ - 1 - x.row, x.coeff});
    return Matching(ncols_, nrows_, std::move(p));
}

CompressedUmatch::CompressedUmatch(OraclePtr d, Matching m, CsMatrix rrr_inv, DecomposeStats stats)
    : d_(std::move(d)), m_(std::move(m)), rrr_inv_(std::move(rrr_inv)), stats_(stats) {
    if (m_.nrows() != d_->nrows() || m_.ncols() != d_->ncols())
        throw UsageError("matching shape differs from matrix shape");
    if (rrr_inv_.nrows() != m_.size() || rrr_inv_.ncols() != m_.size())
        throw UsageError("pivot block must be k x k");
    if (!(rrr_inv_.field() == d_->field())) throw UsageError("pivot block over a different field");
}

FullUmatch::FullUmatch(OraclePtr d, Matching m, CsMatrix rinv, CsMatrix cinv, DecomposeStats stats)
    : d_(std::move(d)), m_(std::move(m)), rinv_(std::move(rinv)), cinv_(std::move(cinv)), stats_(stats) {}

std::vector<std::pair<Index, Index>> pareto_pairs(const MatrixOracle& d) {
    std::vector<std::pair<Index, Index>> out;
    for (Index i = 0; i < d.nrows(); ++i) {
        SparseVector row = d.row(i);
        if (!row.empty() && d.column(row[0].index).max_index() == i) out.push_back({i, row[0].index});
    }
    return out;
}

std::vector<bool> clearing_filter(const Matching& prior) {
    std::vector<bool> skip(prior.ncols(), false);
    for (Index c : prior.kappa()) skip[c] = true;
    return skip;
}

namespace {

void check_skip(const MatrixOracle& d, const DecomposeOptions& opt) {
    if (!opt.skip_rows.empty() && opt.skip_rows.size() != d.nrows())
        throw UsageError("clearing mask length differs from the number of rows");
}

// Lazily merged linear combination of matrix rows. Entries at or left of a
// floor column are ignored, which is how freshly added rows whose combined
// prefix is known to vanish get spliced in.
class RowMerger {
public:
    explicit RowMerger(const Field& f) : f_(f) {}

    void add(SparseVector row, Coeff scale, Index floor) {
        if (scale == 0) return;
        std::size_t pos = 0;
        if (floor != npos)
            while (pos < row.size() && row[pos].index <= floor) ++pos;
        if (pos == row.size()) return;
        std::size_t id = src_.size();
        src_.push_back({std::move(row), pos, scale});
        heap_.push({src_[id].row[pos].index, id});
    }

    // Next column with a nonzero combined coefficient, or npos.
    Entry pop(std::uint64_t& popped) {
        while (!heap_.empty()) {
            Index col = heap_.top().first;
            Coeff v = 0;
            while (!heap_.empty() && heap_.top().first == col) {
                std::size_t id = heap_.top().second;
                heap_.pop();
                ++popped;
                auto& s = src_[id];
                v = f_.add(v, f_.mul(s.scale, s.row[s.pos].coeff));
                if (++s.pos < s.row.size()) heap_.push({s.row[s.pos].index, id});
            }
            if (v != 0) return {col, v};
        }
        return {npos, 0};
    }

private:
    struct Source {
        SparseVector row;
        std::size_t pos;
        Coeff scale;
    };
    using Item = std::pair<Index, std::size_t>;
    const Field& f_;
    std::vector<Source> src_;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap_;
};

}  // namespace

CompressedUmatch decompose_compressed(OraclePtr dp, const DecomposeOptions& opt) {
    const MatrixOracle& d = *dp;
    const Field& f = d.field();
    check_skip(d, opt);
    const Index m = d.nrows(), n = d.ncols();
    DecomposeStats st;

    std::vector<Index> col_row(n, npos);
    std::vector<Coeff> piv(m, 0);
    std::vector<std::vector<Entry>> rbar(m);  // off-diagonal part of pivot rows, by row index
    std::vector<MatchedPair> pairs;
    std::size_t retained = 0;

    for (Index i = m; i-- > 0;) {
        if (!opt.skip_rows.empty() && opt.skip_rows[i]) {
            ++st.rows_cleared;
            continue;
        }
        if (opt.use_shortcut) {
            if (auto e = d.leading_entry_shortcut(i); e && col_row[e->index] == npos) {
                ++st.rows_shortcut;
                ++st.zero_op_pivots;
                col_row[e->index] = i;
                piv[i] = e->coeff;
                pairs.push_back({i, e->index, e->coeff});
                continue;
            }
        }
        RowMerger work(f);
        work.add(d.row(i), 1, npos);
        std::map<Index, Coeff> vec;
        bool touched = false;
        for (;;) {
            Entry lead = work.pop(st.entries_popped);
            if (lead.index == npos) break;  // row reduces to zero
            Index j = col_row[lead.index];
            if (j == npos) {
                col_row[lead.index] = i;
                piv[i] = lead.coeff;
                pairs.push_back({i, lead.index, lead.coeff});
                if (!touched) ++st.zero_op_pivots;
                for (auto [r, c] : vec) rbar[i].push_back({r, c});
                retained += rbar[i].size() * sizeof(Entry);
                break;
            }
            touched = true;
            Coeff lambda = f.div(lead.coeff, piv[j]);
            Coeff neg = f.neg(lambda);
            // subtract lambda * (row j of R-bar) * D; its prefix through lead.index cancels exactly
            work.add(d.row(j), neg, lead.index);
            auto bump = [&](Index r, Coeff c) {
                Coeff& slot = vec[r];
                slot = f.add(slot, c);
                if (slot == 0) vec.erase(r);
            };
            bump(j, neg);
            for (const auto& e : rbar[j]) {
                Coeff s = f.mul(neg, e.coeff);
                work.add(d.row(e.index), s, lead.index);
                bump(e.index, s);
            }
            st.row_additions += 1 + rbar[j].size();
        }
        st.peak_retained_bytes = std::max(st.peak_retained_bytes, retained);
    }

    Matching mt(m, n, std::move(pairs));
    std::vector<Triplet> t;
    for (Index a = 0; a < mt.size(); ++a) {
        Index r = mt.rho()[a];
        t.push_back({a, a, 1});
        for (const auto& e : rbar[r]) {
            Index b = mt.rho_pos(e.index);
            if (b == npos) throw InternalInconsistency("pivot row combination touches a non-pivot row");
            t.push_back({a, b, e.coeff});
        }
    }
    CsMatrix rr(mt.size(), mt.size(), f, t);
    st.peak_retained_bytes += rr.bytes_retained() + (m + n) * sizeof(Index);
    return CompressedUmatch(std::move(dp), std::move(mt), std::move(rr), st);
}

FullUmatch decompose_full(OraclePtr dp, const DecomposeOptions& opt) {
    const MatrixOracle& d = *dp;
    const Field& f = d.field();
    check_skip(d, opt);
    for (bool s : opt.skip_rows)
        if (s) throw UsageError("clearing is incompatible with the full decomposition");
    const Index m = d.nrows(), n = d.ncols();
    DecomposeStats st;

    std::vector<Index> col_row(n, npos);
    std::vector<Coeff> piv(m, 0);
    std::vector<SparseVector> reduced(m), rinv(m);
    std::vector<MatchedPair> pairs;

    for (Index i = m; i-- > 0;) {
        SparseVector row = d.row(i);
        SparseVector ri = SparseVector::unit(i);
        if (opt.use_shortcut) {
            if (auto e = d.leading_entry_shortcut(i); e && col_row[e->index] == npos) {
                ++st.rows_shortcut;
                if (row.empty() || row[0].index != e->index || row[0].coeff != e->coeff)
                    throw InternalInconsistency("oracle shortcut disagrees with its row");
            }
        }
        bool touched = false;
        while (!row.empty()) {
            Entry lead = row[0];
            ++st.entries_popped;
            Index j = col_row[lead.index];
            if (j == npos) {
                col_row[lead.index] = i;
                piv[i] = lead.coeff;
                pairs.push_back({i, lead.index, lead.coeff});
                if (!touched) ++st.zero_op_pivots;
                break;
            }
            touched = true;
            Coeff neg = f.neg(f.div(lead.coeff, piv[j]));
            row = add_scaled(f, row, neg, reduced[j]);
            ri = add_scaled(f, ri, neg, rinv[j]);
            ++st.row_additions;
        }
        reduced[i] = std::move(row);
        rinv[i] = std::move(ri);
    }

    Matching mt(m, n, std::move(pairs));
    std::vector<SparseVector> cinv_rows(n);
    for (Index c = 0; c < n; ++c) {
        Index r = mt.row_of_col(c);
        cinv_rows[c] = r == npos ? SparseVector::unit(c)
                                 : scaled(f, reduced[r], f.inv(mt.coeff_of_row(r)));
    }
    CsMatrix ri = CsMatrix::from_rows(m, f, rinv);
    CsMatrix ci = CsMatrix::from_rows(n, f, cinv_rows);
    st.peak_retained_bytes = ri.bytes_retained() + ci.bytes_retained();
    return FullUmatch(std::move(dp), std::move(mt), std::move(ri), std::move(ci), st);
}

}  // namespace umatch
