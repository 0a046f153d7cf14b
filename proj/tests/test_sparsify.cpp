#include "doctest.h"

#include "dense.hpp"
#include "umatch/errors.hpp"
#include "umatch/persistence.hpp"
#include "umatch/sparsify.hpp"

using namespace umatch;
using namespace umatch::testing;

namespace {

OraclePtr stored(const Dense& d) { return std::make_shared<CsMatrix>(d.sparse()); }

// Replace the matched columns of C by the given vectors and re-derive the matching of D C.
Matching rederived(const CompressedUmatch& u, const LazyUmatch& lu, const std::vector<SparseVector>& cols) {
    const Field& f = u.field();
    Index n = u.d().ncols();
    Dense c(n, n, f);
    for (Index j = 0; j < n; ++j) {
        SparseVector v = u.matching().col_matched(j) ? cols[u.matching().kappa_pos(j)]
                                                     : lu.retrieve(Factor::C, Axis::Column, j).vector;
        for (const auto& e : v) c.at(e.index, j) = e.coeff;
    }
    REQUIRE(is_upper_unitriangular(c));
    return decompose_compressed(stored(Dense::of(u.d()) * c)).matching();
}

}  // namespace

TEST_CASE("pareto pivots stop at once") {
    Field f(7);
    auto u = decompose_compressed(stored(Dense::from_ints({{0, 4, 1}, {2, 0, 0}, {0, 0, 5}}, f)));
    LazyUmatch lu(u);
    for (Index c = 0; c < 3; ++c) CHECK(early_stop_solve(lu, c) == SparseVector::unit(c));
    auto one = decompose_compressed(stored(Dense::from_ints({{3}}, f)));
    CHECK(early_stop_solve(LazyUmatch(one), 0) == SparseVector::unit(0));
}

TEST_CASE("the 2x2 example needs the full column") {
    Field f(7);
    auto u = decompose_compressed(stored(Dense::from_ints({{3, -6}, {3, -6}}, f)));
    LazyUmatch lu(u);
    // only column 0 is matched, and e_0 is valid because column 0 of D ends at the matched row
    CHECK(early_stop_solve(lu, 0) == SparseVector::unit(0));
    CHECK(is_valid_pivot_column(u, 0, SparseVector::unit(0)));
    CHECK_THROWS_AS(is_valid_pivot_column(u, 1, SparseVector::unit(1)), UsageError);
    CHECK_THROWS_AS(early_stop_solve(lu, 1), UsageError);
}

TEST_CASE("validity check rejects bad candidates") {
    Field f(3);
    auto u = decompose_compressed(stored(Dense::from_ints({{1, 1}, {1, 0}}, f)));
    // matching pairs row 1 with column 0 and row 0 with column 1
    REQUIRE(u.matching().col_of_row(1) == 0);
    CHECK(is_valid_pivot_column(u, 1, SparseVector::unit(1)));
    CHECK_FALSE(is_valid_pivot_column(u, 1, SparseVector::from_sorted({{1, 2}})));  // not unit at c
    CHECK_FALSE(is_valid_pivot_column(u, 0, SparseVector::from_sorted({{0, 1}, {1, 1}})));  // entry below c
    CHECK_FALSE(is_valid_pivot_column(u, 1, SparseVector::from_sorted({{0, 1}, {1, 1}})));  // D v reaches row 1
}

TEST_CASE("early stopping on random matrices") {
    std::mt19937_64 rng(3);
    Index stopped_early = 0, pivots = 0;
    for (int t = 0; t < 150; ++t) {
        Field f(t % 2 ? 2 : 5);
        auto d = std::make_shared<CsMatrix>(random_matrix(rng, 3 + t % 9, 3 + t % 11, f, 0.35));
        auto u = decompose_compressed(d);
        LazyUmatch lu(u);
        std::vector<SparseVector> early;
        for (Index c : u.matching().kappa()) {
            SparseVector exact = lu.retrieve(Factor::C, Axis::Column, c).vector;
            SparseVector v = early_stop_solve(lu, c);
            CHECK(is_valid_pivot_column(u, c, v));
            CHECK(is_valid_pivot_column(u, c, exact));
            CHECK(v.size() <= exact.size());
            for (const auto& e : v) CHECK(exact.at(e.index) == e.coeff);
            SparseVector thin = delete_coefficients(u, c, exact);
            CHECK(thin.size() <= exact.size());
            stopped_early += v.size() < exact.size();
            ++pivots;
            early.push_back(v);
        }
        CHECK(rederived(u, lu, early) == u.matching());
    }
    CHECK(stopped_early > 0);
    MESSAGE(stopped_early << " of " << pivots << " pivot columns stopped early");
}

TEST_CASE("a deletable coefficient") {
    // search small matrices for an exact pivot column with a removable entry
    std::mt19937_64 rng(11);
    bool found = false;
    for (int t = 0; t < 20000 && !found; ++t) {
        Field f(3);
        auto d = std::make_shared<CsMatrix>(random_matrix(rng, 4, 4, f, 0.5));
        auto u = decompose_compressed(d);
        LazyUmatch lu(u);
        for (Index c : u.matching().kappa()) {
            SparseVector exact = lu.retrieve(Factor::C, Axis::Column, c).vector;
            SparseVector thin = delete_coefficients(u, c, exact);
            CHECK(is_valid_pivot_column(u, c, thin));
            if (thin.size() < exact.size()) {
                found = true;
                std::vector<SparseVector> cols;
                for (Index k : u.matching().kappa())
                    cols.push_back(k == c ? thin : lu.retrieve(Factor::C, Axis::Column, k).vector);
                CHECK(rederived(u, lu, cols) == u.matching());
            }
        }
    }
    CHECK(found);
}

TEST_CASE("nothing to delete leaves the column alone") {
    Field f(2);
    auto u = decompose_compressed(stored(Dense::identity(3, f)));
    for (Index c = 0; c < 3; ++c) CHECK(delete_coefficients(u, c, SparseVector::unit(c)) == SparseVector::unit(c));
}

TEST_CASE("early stopping on clique boundaries never grows a column") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> w(0, 1);
    Index n = 12;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < i; ++j) d[i][j] = d[j][i] = w(rng);
    auto cx = std::make_shared<CliqueComplex>(d, 2);
    PersistenceEngine e(cx, Field(2));
    const auto& u = e.umatch(2);
    const auto& lu = e.lazy(2);
    Index zero_cost = 0;
    for (Index c : u.matching().kappa()) {
        SparseVector exact = lu.retrieve(Factor::C, Axis::Column, c).vector;
        SparseVector v = early_stop_solve(lu, c);
        CHECK(v.size() <= exact.size());
        CHECK(is_valid_pivot_column(u, c, v));
        zero_cost += v.size() == 1;
    }
    MESSAGE(zero_cost << " of " << u.matching().size() << " pivot columns were zero-cost");
    CHECK(zero_cost * 2 > u.matching().size());
}
