#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "umatch/matrix.hpp"

namespace umatch {

struct MatchedPair {
    Index row;
    Index col;
    Coeff coeff;
    bool operator==(const MatchedPair&) const = default;
};

// Support and values of a generalized matching matrix M, with the index
// bookkeeping used everywhere else: rho = matched rows, kappa = matched
// columns (both sorted), and their complements.
class Matching {
public:
    Matching() = default;
    // Throws UsageError if a row or column is used twice or a coefficient is 0.
    Matching(Index nrows, Index ncols, std::vector<MatchedPair> pairs);

    Index nrows() const { return nrows_; }
    Index ncols() const { return ncols_; }
    std::size_t size() const { return pairs_.size(); }
    // Sorted by row.
    const std::vector<MatchedPair>& pairs() const { return pairs_; }

    Index col_of_row(Index r) const { return row_col_.at(r); }
    Index row_of_col(Index c) const { return col_row_.at(c); }
    Coeff coeff_of_row(Index r) const;
    Coeff coeff_of_col(Index c) const { return coeff_of_row(row_of_col(c)); }
    bool row_matched(Index r) const { return row_col_.at(r) != npos; }
    bool col_matched(Index c) const { return col_row_.at(c) != npos; }

    const std::vector<Index>& rho() const { return rho_; }
    const std::vector<Index>& kappa() const { return kappa_; }
    std::vector<Index> rho_bar() const;
    std::vector<Index> kappa_bar() const;
    Index rho_pos(Index r) const { return rho_pos_.at(r); }
    Index kappa_pos(Index c) const { return kappa_pos_.at(c); }
    // rho position of the row matched to kappa[b]
    Index kstar(Index b) const { return rho_pos_[col_row_[kappa_[b]]]; }
    // kappa position of the column matched to rho[a]
    Index rstar(Index a) const { return kappa_pos_[row_col_[rho_[a]]]; }

    // Matching of the anti-transpose: (r, c) -> (n-1-c, m-1-r).
    Matching antitransposed() const;

    bool operator==(const Matching& o) const {
        return nrows_ == o.nrows_ && ncols_ == o.ncols_ && pairs_ == o.pairs_;
    }

private:
    Index nrows_ = 0, ncols_ = 0;
    std::vector<MatchedPair> pairs_;
    std::vector<Index> row_col_, col_row_;
    std::vector<Index> rho_, kappa_, rho_pos_, kappa_pos_;
    std::vector<Coeff> row_coeff_;
};

struct DecomposeOptions {
    // Use the oracle's leading-entry certificate when it offers one.
    bool use_shortcut = true;
    // Rows known in advance to be unmatched (clearing). Empty means none.
    std::vector<bool> skip_rows;
};

struct DecomposeStats {
    std::uint64_t row_additions = 0;   // scaled row subtractions
    std::uint64_t rows_cleared = 0;
    std::uint64_t rows_shortcut = 0;   // pivots certified by the oracle
    std::uint64_t zero_op_pivots = 0;  // pivots found without any subtraction
    std::uint64_t entries_popped = 0;
    std::size_t peak_retained_bytes = 0;
};

// D together with M and (R_{rho,rho})^{-1}; every other block is recovered lazily.
class CompressedUmatch {
public:
    CompressedUmatch(OraclePtr d, Matching m, CsMatrix rrr_inv, DecomposeStats stats = {});

    const MatrixOracle& d() const { return *d_; }
    const OraclePtr& d_ptr() const { return d_; }
    const Field& field() const { return d_->field(); }
    const Matching& matching() const { return m_; }
    // k x k, indexed by rho positions.
    const CsMatrix& rrr_inv() const { return rrr_inv_; }
    const DecomposeStats& stats() const { return stats_; }

private:
    OraclePtr d_;
    Matching m_;
    CsMatrix rrr_inv_;
    DecomposeStats stats_;
};

// All four square factors in explicit form.
class FullUmatch {
public:
    FullUmatch(OraclePtr d, Matching m, CsMatrix rinv, CsMatrix cinv, DecomposeStats stats = {});

    const MatrixOracle& d() const { return *d_; }
    const OraclePtr& d_ptr() const { return d_; }
    const Field& field() const { return d_->field(); }
    const Matching& matching() const { return m_; }
    const CsMatrix& rinv() const { return rinv_; }
    const CsMatrix& cinv() const { return cinv_; }
    const DecomposeStats& stats() const { return stats_; }

private:
    OraclePtr d_;
    Matching m_;
    CsMatrix rinv_, cinv_;
    DecomposeStats stats_;
};

// Bottom-to-top row reduction storing only the pivot block of R^{-1}.
CompressedUmatch decompose_compressed(OraclePtr d, const DecomposeOptions& opt = {});
// Bottom-to-top row reduction storing all of R^{-1} and C^{-1}. Clearing is not allowed.
FullUmatch decompose_full(OraclePtr d, const DecomposeOptions& opt = {});

// Pairs (i, j) where D[i, j] leads row i and is the lowest entry of column j.
// Every such pair is matched, and its row needs no elimination.
std::vector<std::pair<Index, Index>> pareto_pairs(const MatrixOracle& d);

// Rows of the next boundary matrix that clearing may skip: the matched columns of prior.
std::vector<bool> clearing_filter(const Matching& prior);

}  // namespace umatch
