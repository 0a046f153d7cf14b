#pragma once

#include <optional>
#include <vector>

#include "umatch/lazy.hpp"

namespace umatch {

// Dx = b with the smallest possible max supp(x); nullopt when b is not in the image.
std::optional<SparseVector> solve_dx_b(const CompressedUmatch& u, const SparseVector& b);
// yD = c with the largest possible min supp(y); nullopt when c is not in the row space.
std::optional<SparseVector> solve_yd_c(const CompressedUmatch& u, const SparseVector& c);

enum class Side { Left, Right };
// Coordinates of a kernel vector: C^{-1} b (right) or b R^{-1} (left). Both amount
// to zeroing the matched coordinates; no solve is needed.
SparseVector kernel_coords(const CompressedUmatch& u, const SparseVector& b, Side side);

// A subspace spanned by a subset of the columns of C (domain) or R (codomain).
struct SubspaceBasis {
    enum class Space { Domain, Codomain } space;
    std::vector<Index> columns;  // sorted
    Index ambient = 0;

    bool operator==(const SubspaceBasis&) const = default;
};

// F_p: span of the first p standard basis vectors of the domain.
SubspaceBasis domain_flag(const CompressedUmatch& u, Index p);
// G_p: span of the first p standard basis vectors of the codomain.
SubspaceBasis codomain_flag(const CompressedUmatch& u, Index p);
// Preimage of G_p under D.
SubspaceBasis pullback(const CompressedUmatch& u, Index p);
// Image of F_p under D.
SubspaceBasis pushforward(const CompressedUmatch& u, Index p);
inline SubspaceBasis kernel_basis(const CompressedUmatch& u) { return pullback(u, 0); }
inline SubspaceBasis image_basis(const CompressedUmatch& u) { return pushforward(u, u.d().ncols()); }
SubspaceBasis meet(const SubspaceBasis& a, const SubspaceBasis& b);
SubspaceBasis join(const SubspaceBasis& a, const SubspaceBasis& b);
// The generating vectors themselves.
std::vector<SparseVector> basis_vectors(const LazyUmatch& lu, const SubspaceBasis& s);

// L P = N U with L lower unitriangular, P a generalized permutation matrix and
// U upper unitriangular; all k x k.
struct LuFactors {
    CsMatrix l, p, n, u;
};
LuFactors to_lu(const CompressedUmatch& u);

enum class Orientation { Row, Column };
// Reduced echelon form of D with leading entries 1.
// Row: nonzero rows sit at matched rows, row rho_a leads at its matched column.
// Column: nonzero columns sit at matched columns, column kappa_b ends at its matched row.
CsMatrix to_echelon(const CompressedUmatch& u, Orientation o);

// A right reduction D V = X where the nonzero columns of X have distinct lowest entries.
struct RdvDecomposition {
    CsMatrix reduced;        // X
    CsMatrix v;              // upper unitriangular
    std::vector<Index> low;  // lowest nonzero row of each column of X, npos if zero
};
RdvDecomposition umatch_to_rdv(const FullUmatch& u);
// Throws UsageError unless V is upper unitriangular and D V is reduced.
FullUmatch rdv_to_umatch(OraclePtr d, const CsMatrix& v);

// Inverse of an upper unitriangular matrix, row by row.
CsMatrix unitriangular_inverse(const CsMatrix& t);

}  // namespace umatch
