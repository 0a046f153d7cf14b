#pragma once

#include <cstdint>
#include <string>

#include "umatch/triangular.hpp"
#include "umatch/umatch.hpp"

namespace umatch {

enum class Factor { R, Rinv, C, Cinv };
enum class Axis { Row, Column };

Factor parse_factor(const std::string& s);  // "R", "Rinv", "C", "Cinv"
Axis parse_axis(const std::string& s);      // "row", "column"
std::string to_string(Factor f);
std::string to_string(Axis a);

struct Retrieved {
    SparseVector vector;
    std::uint32_t solves = 0;  // triangular solves spent
};

// The pivot block of R^{-1} D: A = (R_{rho,rho})^{-1} D_{rho,kappa}, indexed by
// (rho position, kappa position). Column b has its pivot at row kstar(b).
class InnerBlock : public MatrixOracle {
public:
    explicit InnerBlock(const CompressedUmatch& u);
    Index nrows() const override { return u_->matching().size(); }
    Index ncols() const override { return u_->matching().size(); }
    const Field& field() const override { return u_->field(); }
    SparseVector row(Index a) const override;
    SparseVector column(Index b) const override;

private:
    const CompressedUmatch* u_;
};

// Rows and columns of R, R^{-1}, C, C^{-1} computed on demand from the
// compressed decomposition, with at most one triangular solve each. The
// decomposition must outlive this object.
class LazyUmatch {
public:
    explicit LazyUmatch(const CompressedUmatch& u);

    const CompressedUmatch& umatch() const { return *u_; }
    Retrieved retrieve(Factor f, Axis ax, Index i) const;
    // Triangular solves retrieve(f, ax, i) performs; never more than one.
    std::uint32_t solve_count_audit(Factor f, Axis ax, Index i) const { return retrieve(f, ax, i).solves; }

    // Building blocks shared with the solvers.
    const InnerBlock& inner() const { return a_; }
    const TriangularShape& inner_shape() const { return a_shape_; }
    const TriangularShape& pivot_shape() const { return rr_shape_; }
    // Entries of v at matched rows, re-indexed by rho position.
    SparseVector restrict_rho(const SparseVector& v) const;
    SparseVector restrict_kappa(const SparseVector& v) const;
    SparseVector lift_rho(const SparseVector& v) const;    // rho positions -> row indices
    SparseVector lift_kappa(const SparseVector& v) const;  // kappa positions -> column indices
    // M_{rho,kappa} x for x over kappa positions, as a vector over rho positions
    SparseVector apply_matching(const SparseVector& x) const;

private:
    SparseVector rinv_row(Index r, std::uint32_t& s) const;
    SparseVector rinv_col(Index r, std::uint32_t& s) const;
    SparseVector r_row(Index r, std::uint32_t& s) const;
    SparseVector r_col(Index r, std::uint32_t& s) const;
    SparseVector cinv_row(Index c) const;
    SparseVector cinv_col(Index c) const;
    SparseVector c_row(Index c, std::uint32_t& s) const;
    SparseVector c_col(Index c, std::uint32_t& s) const;

    const CompressedUmatch* u_;
    InnerBlock a_;
    TriangularShape a_shape_, rr_shape_;
};

}  // namespace umatch
