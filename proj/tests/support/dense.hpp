#pragma once

// Small dense linear algebra over Z/p, used only as an independent reference.

#include <random>
#include <string>
#include <vector>

#include "umatch/matrix.hpp"
#include "umatch/umatch.hpp"

namespace umatch::testing {

struct Dense {
    Index m = 0, n = 0;
    Field f;
    std::vector<Coeff> a;

    Dense(Index rows, Index cols, const Field& field) : m(rows), n(cols), f(field), a(rows * cols, 0) {}
    Coeff& at(Index i, Index j) { return a[i * n + j]; }
    Coeff at(Index i, Index j) const { return a[i * n + j]; }
    bool operator==(const Dense& o) const { return m == o.m && n == o.n && a == o.a; }

    static Dense identity(Index k, const Field& f);
    static Dense of(const MatrixOracle& x);
    static Dense from_ints(const std::vector<std::vector<long long>>& rows, const Field& f);
    std::vector<Coeff> row(Index i) const;
    std::vector<Coeff> col(Index j) const;
    Dense transpose() const;
    Dense sub(const std::vector<Index>& rows, const std::vector<Index>& cols) const;
    CsMatrix sparse() const;
};

Dense operator*(const Dense& x, const Dense& y);
Dense operator-(const Dense& x, const Dense& y);
std::vector<Coeff> mul(const Dense& x, const std::vector<Coeff>& v);

std::size_t rank(const Dense& x);
// Throws if singular.
Dense inverse(const Dense& x);
// Basis of {v : x v = 0}.
std::vector<std::vector<Coeff>> nullspace(const Dense& x);
// Whether b lies in the span of the given vectors.
bool in_span(const std::vector<std::vector<Coeff>>& vecs, const std::vector<Coeff>& b, const Field& f,
             Index len);

// Dimension of the span of the given vectors of length len.
std::size_t rank_of(const std::vector<std::vector<Coeff>>& vecs, const Field& f, Index len);

std::vector<Coeff> densify(const SparseVector& v, Index len);
SparseVector sparsify_vec(const std::vector<Coeff>& v);

bool is_upper_unitriangular(const Dense& x);
// At most one nonzero per row and per column.
bool is_generalized_matching(const Dense& x);

// Matching read off from ranks of lower-left submatrices.
Matching rank_oracle_matching(const Dense& d);

// Random sparse matrix; density is the probability that an entry is nonzero.
CsMatrix random_matrix(std::mt19937_64& rng, Index m, Index n, const Field& f, double density);

}  // namespace umatch::testing

namespace umatch::testing {

Dense matching_dense(const Matching& mt, const Field& f);

struct DenseFactors {
    Dense d, m, r, rinv, c, cinv;
};
DenseFactors dense_factors(const FullUmatch& u);

// R M = D C, triangularity, matching shape and the proper axioms.
// Returns an empty string on success, else the first failed property.
std::string check_umatch(const DenseFactors& x, const Matching& mt);

}  // namespace umatch::testing

namespace umatch::testing {

// Left-to-right column reduction; returns V with D V reduced.
Dense standard_reduction_v(const Dense& d);

// Calls visit(v) for every vector of GF(p)^len.
template <class Visit>
void for_each_vector(const Field& f, Index len, Visit visit) {
    std::vector<Coeff> v(len, 0);
    for (;;) {
        visit(static_cast<const std::vector<Coeff>&>(v));
        Index k = 0;
        while (k < len && v[k] == f.modulus() - 1) v[k++] = 0;
        if (k == len) return;
        ++v[k];
    }
}

// Largest index with a nonzero entry, or -1.
long max_support(const std::vector<Coeff>& v);
// Smallest index with a nonzero entry, or len.
long min_support(const std::vector<Coeff>& v);

}  // namespace umatch::testing
