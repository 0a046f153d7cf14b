#include "umatch/matrix.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace umatch {

// ---- CsMatrix ----

CsMatrix::CsMatrix(Index nrows, Index ncols, const Field& f, const std::vector<Triplet>& t,
                   bool column_twin)
    : nrows_(nrows), ncols_(ncols), field_(f) {
    build(t, column_twin);
}

void CsMatrix::build(const std::vector<Triplet>& t, bool column_twin) {
    for (const auto& x : t)
        if (x.row >= nrows_ || x.col >= ncols_)
            throw UsageError("triplet (" + std::to_string(x.row) + ", " + std::to_string(x.col) +
                             ") outside " + std::to_string(nrows_) + "x" + std::to_string(ncols_));
    std::vector<Triplet> s(t);
    std::sort(s.begin(), s.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    row_ptr_.assign(nrows_ + 1, 0);
    col_idx_.clear();
    row_val_.clear();
    for (std::size_t k = 0; k < s.size();) {
        Index i = s[k].row, j = s[k].col;
        Coeff c = 0;
        for (; k < s.size() && s[k].row == i && s[k].col == j; ++k)
            c = field_.add(c, field_.from_int(s[k].value));
        if (c == 0) continue;
        col_idx_.push_back(j);
        row_val_.push_back(c);
        ++row_ptr_[i + 1];
    }
    std::partial_sum(row_ptr_.begin(), row_ptr_.end(), row_ptr_.begin());

    has_twin_ = column_twin;
    if (!column_twin) return;
    col_ptr_.assign(ncols_ + 1, 0);
    for (Index j : col_idx_) ++col_ptr_[j + 1];
    std::partial_sum(col_ptr_.begin(), col_ptr_.end(), col_ptr_.begin());
    row_idx_.resize(col_idx_.size());
    col_val_.resize(col_idx_.size());
    std::vector<std::size_t> fill(col_ptr_.begin(), col_ptr_.end() - 1);
    for (Index i = 0; i < nrows_; ++i)
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            std::size_t at = fill[col_idx_[k]]++;
            row_idx_[at] = i;
            col_val_[at] = row_val_[k];
        }
}

CsMatrix CsMatrix::from_rows(Index ncols, const Field& f, const std::vector<SparseVector>& rows,
                             bool column_twin) {
    std::vector<Triplet> t;
    for (Index i = 0; i < rows.size(); ++i)
        for (const auto& e : rows[i]) t.push_back({i, e.index, e.coeff});
    return CsMatrix(rows.size(), ncols, f, t, column_twin);
}

CsMatrix CsMatrix::from_columns(Index nrows, const Field& f, const std::vector<SparseVector>& cols,
                                bool column_twin) {
    std::vector<Triplet> t;
    for (Index j = 0; j < cols.size(); ++j)
        for (const auto& e : cols[j]) t.push_back({e.index, j, e.coeff});
    return CsMatrix(nrows, cols.size(), f, t, column_twin);
}

CsMatrix CsMatrix::identity(Index n, const Field& f) {
    std::vector<Triplet> t;
    for (Index i = 0; i < n; ++i) t.push_back({i, i, 1});
    return CsMatrix(n, n, f, t);
}

CsMatrix CsMatrix::copy_of(const MatrixOracle& m, bool column_twin) {
    std::vector<SparseVector> rows;
    rows.reserve(m.nrows());
    for (Index i = 0; i < m.nrows(); ++i) rows.push_back(m.row(i));
    return from_rows(m.ncols(), m.field(), rows, column_twin);
}

SparseVector CsMatrix::row(Index i) const {
    if (i >= nrows_) throw UsageError("row index out of range");
    std::vector<Entry> e;
    e.reserve(row_ptr_[i + 1] - row_ptr_[i]);
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) e.push_back({col_idx_[k], row_val_[k]});
    return SparseVector::from_sorted(std::move(e));
}

SparseVector CsMatrix::column(Index j) const {
    if (j >= ncols_) throw UsageError("column index out of range");
    std::vector<Entry> e;
    if (has_twin_) {
        for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) e.push_back({row_idx_[k], col_val_[k]});
    } else {
        for (Index i = 0; i < nrows_; ++i)
            if (Coeff c = entry(i, j)) e.push_back({i, c});
    }
    return SparseVector::from_sorted(std::move(e));
}

Coeff CsMatrix::entry(Index i, Index j) const {
    if (i >= nrows_ || j >= ncols_) throw UsageError("entry index out of range");
    auto first = col_idx_.begin() + row_ptr_[i], last = col_idx_.begin() + row_ptr_[i + 1];
    auto it = std::lower_bound(first, last, j);
    return (it != last && *it == j) ? row_val_[it - col_idx_.begin()] : 0;
}

std::size_t CsMatrix::nnz_offdiagonal() const {
    std::size_t n = 0;
    for (Index i = 0; i < nrows_; ++i)
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) n += col_idx_[k] != i;
    return n;
}

std::vector<Triplet> CsMatrix::triplets() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (Index i = 0; i < nrows_; ++i)
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) t.push_back({i, col_idx_[k], row_val_[k]});
    return t;
}

std::size_t CsMatrix::bytes_retained() const {
    return sizeof(*this) + row_ptr_.capacity() * sizeof(std::size_t) +
           col_idx_.capacity() * sizeof(Index) + row_val_.capacity() * sizeof(Coeff) +
           col_ptr_.capacity() * sizeof(std::size_t) + row_idx_.capacity() * sizeof(Index) +
           col_val_.capacity() * sizeof(Coeff);
}

// ---- views ----

namespace {

SparseVector reverse_reindex(const SparseVector& v, Index len) {
    std::vector<Entry> e;
    e.reserve(v.size());
    for (auto it = v.entries().rbegin(); it != v.entries().rend(); ++it)
        e.push_back({len - 1 - it->index, it->coeff});
    return SparseVector::from_sorted(std::move(e));
}

}  // namespace

SparseVector AntiTransposeView::row(Index i) const {
    if (i >= nrows()) throw UsageError("row index out of range");
    return reverse_reindex(d_->column(d_->ncols() - 1 - i), d_->nrows());
}

SparseVector AntiTransposeView::column(Index j) const {
    if (j >= ncols()) throw UsageError("column index out of range");
    return reverse_reindex(d_->row(d_->nrows() - 1 - j), d_->ncols());
}

Coeff AntiTransposeView::entry(Index i, Index j) const {
    if (i >= nrows() || j >= ncols()) throw UsageError("entry index out of range");
    return d_->entry(d_->nrows() - 1 - j, d_->ncols() - 1 - i);
}

OraclePtr antitranspose(OraclePtr d) { return std::make_shared<AntiTransposeView>(std::move(d)); }

SubmatrixView::SubmatrixView(OraclePtr d, std::vector<Index> rows, std::vector<Index> cols)
    : d_(std::move(d)), rows_(std::move(rows)), cols_(std::move(cols)) {
    row_inv_.assign(d_->nrows(), npos);
    col_inv_.assign(d_->ncols(), npos);
    for (Index a = 0; a < rows_.size(); ++a) {
        if (rows_[a] >= d_->nrows() || row_inv_[rows_[a]] != npos)
            throw UsageError("submatrix row list out of range or repeated");
        row_inv_[rows_[a]] = a;
    }
    for (Index b = 0; b < cols_.size(); ++b) {
        if (cols_[b] >= d_->ncols() || col_inv_[cols_[b]] != npos)
            throw UsageError("submatrix column list out of range or repeated");
        col_inv_[cols_[b]] = b;
    }
    rows_sorted_ = std::is_sorted(rows_.begin(), rows_.end());
    cols_sorted_ = std::is_sorted(cols_.begin(), cols_.end());
}

namespace {

SparseVector pick(const SparseVector& v, const std::vector<Index>& inv, bool sorted) {
    std::vector<Entry> e;
    for (const auto& x : v)
        if (inv[x.index] != npos) e.push_back({inv[x.index], x.coeff});
    if (!sorted)
        std::sort(e.begin(), e.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    return SparseVector::from_sorted(std::move(e));
}

}  // namespace

SparseVector SubmatrixView::row(Index i) const {
    if (i >= nrows()) throw UsageError("row index out of range");
    return pick(d_->row(rows_[i]), col_inv_, cols_sorted_);
}

SparseVector SubmatrixView::column(Index j) const {
    if (j >= ncols()) throw UsageError("column index out of range");
    return pick(d_->column(cols_[j]), row_inv_, rows_sorted_);
}

Coeff SubmatrixView::entry(Index i, Index j) const {
    if (i >= nrows() || j >= ncols()) throw UsageError("entry index out of range");
    return d_->entry(rows_[i], cols_[j]);
}

OraclePtr submatrix(OraclePtr d, std::vector<Index> rows, std::vector<Index> cols) {
    return std::make_shared<SubmatrixView>(std::move(d), std::move(rows), std::move(cols));
}

// ---- products ----

SparseVector mul_columns(const MatrixOracle& d, const SparseVector& x) {
    std::vector<Entry> acc;
    const Field& f = d.field();
    for (const auto& e : x) {
        if (e.index >= d.ncols()) throw UsageError("vector longer than matrix width");
        for (const auto& c : d.column(e.index)) acc.push_back({c.index, f.mul(c.coeff, e.coeff)});
    }
    return SparseVector::from_entries(std::move(acc), f);
}

SparseVector mul_rows(const SparseVector& y, const MatrixOracle& d) {
    std::vector<Entry> acc;
    const Field& f = d.field();
    for (const auto& e : y) {
        if (e.index >= d.nrows()) throw UsageError("vector longer than matrix height");
        for (const auto& c : d.row(e.index)) acc.push_back({c.index, f.mul(c.coeff, e.coeff)});
    }
    return SparseVector::from_entries(std::move(acc), f);
}

// ---- triplet I/O ----

TripletFile read_triplets(std::istream& in) {
    TripletFile out;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        std::string probe;
        if (!(ss >> probe)) continue;
        ss.clear();
        ss.seekg(0);
        auto bad = [&](const std::string& why) {
            return UsageError("triplet input line " + std::to_string(lineno) + ": " + why);
        };
        if (!have_header) {
            long long r, c, p;
            if (!(ss >> r >> c >> p) || r < 0 || c < 0) throw bad("expected header 'rows cols modulus'");
            if (p < 2) throw bad("modulus must be at least 2");
            Field f{std::uint32_t(p)};  // validates primality
            out.rows = Index(r);
            out.cols = Index(c);
            out.modulus = f.modulus();
            have_header = true;
            continue;
        }
        long long i, j, v;
        if (!(ss >> i >> j >> v)) throw bad("expected 'i j v'");
        std::string rest;
        if (ss >> rest) throw bad("trailing text '" + rest + "'");
        if (i < 1 || j < 1 || Index(i) > out.rows || Index(j) > out.cols)
            throw bad("index (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
        Field f(out.modulus);
        out.entries.push_back({Index(i - 1), Index(j - 1), f.from_int(v)});
    }
    if (!have_header) throw UsageError("triplet input is empty");
    return out;
}

TripletFile read_triplets_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return read_triplets(in);
}

void write_triplets(std::ostream& out, const CsMatrix& m) {
    out << m.nrows() << ' ' << m.ncols() << ' ' << m.field().modulus() << '\n';
    for (const auto& t : m.triplets()) out << t.row + 1 << ' ' << t.col + 1 << ' ' << t.value << '\n';
}

std::shared_ptr<CsMatrix> load_matrix(const std::string& path) {
    auto t = read_triplets_file(path);
    return std::make_shared<CsMatrix>(t.rows, t.cols, Field(t.modulus), t.entries);
}

}  // namespace umatch
