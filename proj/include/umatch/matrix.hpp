#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "umatch/sparse_vector.hpp"

namespace umatch {

// Anything that can hand out major views of a sparse matrix on demand.
class MatrixOracle {
public:
    virtual ~MatrixOracle() = default;

    virtual Index nrows() const = 0;
    virtual Index ncols() const = 0;
    virtual const Field& field() const = 0;

    virtual SparseVector row(Index i) const = 0;
    virtual SparseVector column(Index j) const = 0;
    virtual Coeff entry(Index i, Index j) const { return row(i).at(j); }

    // If the oracle can certify that the leading entry (i, j) of row i is also the
    // bottom entry of column j, it may return it without materializing the row.
    virtual std::optional<Entry> leading_entry_shortcut(Index) const { return std::nullopt; }
};

using OraclePtr = std::shared_ptr<const MatrixOracle>;

struct Triplet {
    Index row;
    Index col;
    Coeff value;
};

// Compressed row storage with an optional column-major twin.
class CsMatrix : public MatrixOracle {
public:
    CsMatrix(Index nrows, Index ncols, const Field& f) : CsMatrix(nrows, ncols, f, {}, true) {}
    // Duplicate triplets are summed.
    CsMatrix(Index nrows, Index ncols, const Field& f, const std::vector<Triplet>& t,
             bool column_twin = true);
    static CsMatrix from_rows(Index ncols, const Field& f, const std::vector<SparseVector>& rows,
                              bool column_twin = true);
    static CsMatrix from_columns(Index nrows, const Field& f, const std::vector<SparseVector>& cols,
                                 bool column_twin = true);
    static CsMatrix identity(Index n, const Field& f);
    // Snapshot of an arbitrary oracle (read row by row).
    static CsMatrix copy_of(const MatrixOracle& m, bool column_twin = true);

    Index nrows() const override { return nrows_; }
    Index ncols() const override { return ncols_; }
    const Field& field() const override { return field_; }
    SparseVector row(Index i) const override;
    SparseVector column(Index j) const override;
    Coeff entry(Index i, Index j) const override;

    std::size_t nnz() const { return col_idx_.size(); }
    // Number of nonzero off-diagonal entries, i.e. nnz(A - I) for unitriangular A.
    std::size_t nnz_offdiagonal() const;
    std::vector<Triplet> triplets() const;
    std::size_t bytes_retained() const;

private:
    void build(const std::vector<Triplet>& t, bool column_twin);

    Index nrows_, ncols_;
    Field field_;
    std::vector<std::size_t> row_ptr_;
    std::vector<Index> col_idx_;
    std::vector<Coeff> row_val_;
    bool has_twin_ = false;
    std::vector<std::size_t> col_ptr_;
    std::vector<Index> row_idx_;
    std::vector<Coeff> col_val_;
};

// result[i, j] = D[m-1-j, n-1-i]; transpose followed by reversal of both orders.
class AntiTransposeView : public MatrixOracle {
public:
    explicit AntiTransposeView(OraclePtr d) : d_(std::move(d)) {}
    Index nrows() const override { return d_->ncols(); }
    Index ncols() const override { return d_->nrows(); }
    const Field& field() const override { return d_->field(); }
    SparseVector row(Index i) const override;
    SparseVector column(Index j) const override;
    Coeff entry(Index i, Index j) const override;

private:
    OraclePtr d_;
};

OraclePtr antitranspose(OraclePtr d);

// result[i, j] = D[rows[i], cols[j]]; index lists must be in range and duplicate free.
class SubmatrixView : public MatrixOracle {
public:
    SubmatrixView(OraclePtr d, std::vector<Index> rows, std::vector<Index> cols);
    Index nrows() const override { return rows_.size(); }
    Index ncols() const override { return cols_.size(); }
    const Field& field() const override { return d_->field(); }
    SparseVector row(Index i) const override;
    SparseVector column(Index j) const override;
    Coeff entry(Index i, Index j) const override;

private:
    OraclePtr d_;
    std::vector<Index> rows_, cols_;
    std::vector<Index> row_inv_, col_inv_;
    bool rows_sorted_, cols_sorted_;
};

OraclePtr submatrix(OraclePtr d, std::vector<Index> rows, std::vector<Index> cols);

// D*x, combining columns of D.
SparseVector mul_columns(const MatrixOracle& d, const SparseVector& x);
// y*D, combining rows of D.
SparseVector mul_rows(const SparseVector& y, const MatrixOracle& d);

// Plain-text triplet format: header "rows cols modulus", then "i j v" per line, 1-based.
struct TripletFile {
    Index rows = 0, cols = 0;
    std::uint32_t modulus = 2;
    std::vector<Triplet> entries;  // 0-based, values reduced mod p
};

TripletFile read_triplets(std::istream& in);
TripletFile read_triplets_file(const std::string& path);
void write_triplets(std::ostream& out, const CsMatrix& m);
std::shared_ptr<CsMatrix> load_matrix(const std::string& path);

}  // namespace umatch
