#include "umatch/persistence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "umatch/errors.hpp"
#include "umatch/linalg.hpp"
#include "umatch/sparsify.hpp"

namespace umatch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::atomic<std::uint64_t> next_engine_id{1};

}  // namespace

GeneratorStrategy parse_strategy(const std::string& s) {
    if (s == "exact") return GeneratorStrategy::Exact;
    if (s == "early-stop") return GeneratorStrategy::EarlyStop;
    throw UsageError("unknown generator strategy '" + s + "' (expected exact or early-stop)");
}

PersistenceEngine::PersistenceEngine(ComplexPtr cx, const Field& f, EngineOptions opt)
    : cx_(std::move(cx)), field_(f), id_(next_engine_id++) {
    for (Index n = 1; n <= cx_->top_dim(); ++n) {
        d_.push_back(boundary_oracle(cx_, n, field_));
        DecomposeOptions dopt;
        dopt.use_shortcut = opt.pareto;
        if (opt.clearing && n >= 2) dopt.skip_rows = clearing_filter(u_.back()->matching());
        u_.push_back(std::make_unique<CompressedUmatch>(decompose_compressed(d_.back(), dopt)));
        lazy_.push_back(std::make_unique<LazyUmatch>(*u_.back()));
    }
}

const CompressedUmatch& PersistenceEngine::umatch(Index n) const {
    if (n < 1 || n > top_dim()) throw UsageError("no boundary matrix in that dimension");
    return *u_[n - 1];
}

const LazyUmatch& PersistenceEngine::lazy(Index n) const {
    if (n < 1 || n > top_dim()) throw UsageError("no boundary matrix in that dimension");
    return *lazy_[n - 1];
}

std::vector<Bar> PersistenceEngine::barcode(Index n, bool keep_empty) const {
    if (n > top_dim()) throw UsageError("homology dimension exceeds the complex");
    std::vector<Bar> out;
    auto push = [&](Index r, Index c) {
        Bar b;
        b.engine = id_;
        b.dim = n;
        b.birth_cell = r;
        b.birth_index = cx_->global_index(n, r);
        b.birth = cx_->birth(n, r);
        b.death_cell = c;
        if (c != npos) {
            b.death_index = cx_->global_index(n + 1, c);
            b.death = cx_->birth(n + 1, c);
        } else {
            b.death = kInf;
        }
        if (keep_empty || b.birth != b.death) out.push_back(b);
    };
    for (Index k = 0; k < cx_->num_cells(n); ++k) {
        if (n >= 1 && umatch(n).matching().col_matched(k)) continue;
        if (n < top_dim() && umatch(n + 1).matching().row_matched(k))
            push(k, umatch(n + 1).matching().col_of_row(k));
        else
            push(k, npos);
    }
    std::sort(out.begin(), out.end(), [](const Bar& a, const Bar& b) {
        return std::pair(a.birth_index, a.death_index) < std::pair(b.birth_index, b.death_index);
    });
    return out;
}

void PersistenceEngine::check_bar(const Bar& b) const {
    if (b.engine != id_) throw UsageError("bar was produced by a different engine");
}

void PersistenceEngine::check_chain(const Chain& x) const {
    if (x.dim > top_dim()) throw UsageError("chain dimension exceeds the complex");
    if (!x.v.empty() && x.v.max_index() >= cx_->num_cells(x.dim)) throw UsageError("chain refers to a missing cell");
}

Chain PersistenceEngine::cycle_representative(const Bar& b, GeneratorStrategy s) const {
    check_bar(b);
    Index n = b.dim;
    SparseVector v;
    if (!b.infinite()) {
        if (s == GeneratorStrategy::EarlyStop)
            v = mul_columns(*d_[n], early_stop_solve(lazy(n + 1), b.death_cell));
        else
            v = lazy(n + 1).retrieve(Factor::R, Axis::Column, b.birth_cell).vector;
    } else if (n == 0) {
        v = SparseVector::unit(b.birth_cell);
    } else {
        v = lazy(n).retrieve(Factor::C, Axis::Column, b.birth_cell).vector;
    }
    return {n, normalize_leading(field_, v)};
}

Chain PersistenceEngine::cocycle_representative(const Bar& b) const {
    check_bar(b);
    Index n = b.dim;
    SparseVector v = n == top_dim() ? SparseVector::unit(b.birth_cell)
                                    : lazy(n + 1).retrieve(Factor::Rinv, Axis::Row, b.birth_cell).vector;
    return {n, normalize_leading(field_, v)};
}

Chain PersistenceEngine::jordan_column(Index global) const {
    if (global >= cx_->num_cells_total()) throw UsageError("cell index out of range");
    auto [n, k] = cx_->global_order()[global];
    if (n < top_dim() && umatch(n + 1).matching().row_matched(k)) {
        const auto& mt = umatch(n + 1).matching();
        SparseVector r = lazy(n + 1).retrieve(Factor::R, Axis::Column, k).vector;
        return {n, scaled(field_, r, mt.coeff_of_row(k))};
    }
    if (n == 0) return {0, SparseVector::unit(k)};
    return {n, lazy(n).retrieve(Factor::C, Axis::Column, k).vector};
}

std::vector<Index> PersistenceEngine::saecular_select(SaecularSpace s, Index n, Index p) const {
    if (n > top_dim()) throw UsageError("dimension exceeds the complex");
    std::vector<Index> out;
    for (Index k = 0; k < cx_->num_cells(n); ++k) {
        Index g = cx_->global_index(n, k);
        bool keep = false;
        switch (s) {
            case SaecularSpace::Cycles:
                keep = g < p && (n == 0 || !umatch(n).matching().col_matched(k));
                break;
            case SaecularSpace::Boundaries:
                keep = n < top_dim() && umatch(n + 1).matching().row_matched(k) &&
                       cx_->global_index(n + 1, umatch(n + 1).matching().col_of_row(k)) < p;
                break;
            case SaecularSpace::Preimage:
                keep = n == 0 || !umatch(n).matching().col_matched(k) ||
                       cx_->global_index(n - 1, umatch(n).matching().row_of_col(k)) < p;
                break;
        }
        if (keep) out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double PersistenceEngine::birth_of(const Chain& x) const {
    check_chain(x);
    return x.v.empty() ? -kInf : cx_->birth(x.dim, x.v.max_index());
}

Chain PersistenceEngine::boundary(const Chain& x) const {
    check_chain(x);
    if (x.dim == 0) return {0, {}};
    return {x.dim - 1, mul_columns(*d_[x.dim - 1], x.v)};
}

Chain PersistenceEngine::coboundary(const Chain& x) const {
    check_chain(x);
    if (x.dim == top_dim()) return {x.dim + 1, {}};
    return {x.dim + 1, mul_rows(x.v, *d_[x.dim])};
}

std::optional<Bounding> PersistenceEngine::bounding_chain(const Chain& x) const {
    if (!boundary(x).v.empty()) throw UsageError("chain is not a cycle");
    if (x.v.empty()) return Bounding{-kInf, npos, {x.dim + 1, {}}};
    if (x.dim == top_dim()) return std::nullopt;
    auto y = solve_dx_b(umatch(x.dim + 1), x.v);
    if (!y) return std::nullopt;
    Index last = y->max_index();
    return Bounding{cx_->birth(x.dim + 1, last), cx_->global_index(x.dim + 1, last), {x.dim + 1, std::move(*y)}};
}

std::optional<double> PersistenceEngine::time_of_homology(const Chain& x, const Chain& f) const {
    if (x.dim != f.dim) throw UsageError("chains have different dimensions");
    if (!boundary(x).v.empty() || !boundary(f).v.empty()) throw UsageError("chain is not a cycle");
    auto b = bounding_chain({x.dim, add_scaled(field_, x.v, field_.neg(1), f.v)});
    if (!b) return std::nullopt;
    return std::max({birth_of(x), birth_of(f), b->time});
}

std::pair<double, double> PersistenceEngine::lifespan(const Chain& x) const {
    auto b = bounding_chain(x);
    return {birth_of(x), b ? b->time : kInf};
}

TwoTermJordan two_term_jordan(const LazyUmatch& lu) {
    const CompressedUmatch& u = lu.umatch();
    const auto& mt = u.matching();
    TwoTermJordan e;
    for (Index r = 0; r < u.d().nrows(); ++r) {
        if (!mt.row_matched(r)) {
            e.codomain.push_back(SparseVector::unit(r));
            continue;
        }
        SparseVector col = lu.retrieve(Factor::R, Axis::Column, r).vector;
        e.codomain.push_back(scaled(u.field(), col, mt.coeff_of_row(r)));
    }
    for (Index c = 0; c < u.d().ncols(); ++c) e.domain.push_back(lu.retrieve(Factor::C, Axis::Column, c).vector);
    return e;
}

}  // namespace umatch
