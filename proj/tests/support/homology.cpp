#include "homology.hpp"

#include <algorithm>

namespace umatch::testing {

HomologyOracle::HomologyOracle(ComplexPtr cx, const Field& f) : cx_(std::move(cx)), f_(f) {
    d_.emplace_back(0, 0, f);
    for (Index n = 1; n <= cx_->top_dim(); ++n) d_.push_back(Dense::of(*boundary_oracle(cx_, n, f)));
}

Index HomologyOracle::count_upto(Index n, double t) const {
    Index k = 0;
    while (k < cells(n) && cx_->birth(n, k) <= t) ++k;
    return k;
}

Index HomologyOracle::count_before(Index n, Index g) const {
    Index k = 0;
    while (k < cells(n) && cx_->global_index(n, k) < g) ++k;
    return k;
}

std::vector<double> HomologyOracle::values() const {
    std::vector<double> v;
    for (Index n = 0; n <= cx_->top_dim(); ++n)
        for (Index k = 0; k < cx_->num_cells(n); ++k) v.push_back(cx_->birth(n, k));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

Index HomologyOracle::prefix_rank(Index n, Index cols) const {
    if (n == 0 || n > cx_->top_dim() || cols == 0) return 0;
    const Dense& d = d_[n];
    std::vector<Index> rows(d.m), cs(cols);
    for (Index i = 0; i < d.m; ++i) rows[i] = i;
    for (Index j = 0; j < cols; ++j) cs[j] = j;
    return rank(d.sub(rows, cs));
}

Index HomologyOracle::betti(Index n, double t) const {
    Index a = count_upto(n, t);
    return a - prefix_rank(n, a) - prefix_rank(n + 1, count_upto(n + 1, t));
}

std::vector<std::vector<Coeff>> HomologyOracle::cycles(Index n, Index a) const {
    std::vector<std::vector<Coeff>> out;
    if (n == 0) {
        for (Index k = 0; k < a; ++k) {
            std::vector<Coeff> e(cells(0), 0);
            e[k] = 1;
            out.push_back(e);
        }
        return out;
    }
    if (a == 0) return out;
    const Dense& d = d_[n];
    std::vector<Index> rows(d.m), cs(a);
    for (Index i = 0; i < d.m; ++i) rows[i] = i;
    for (Index j = 0; j < a; ++j) cs[j] = j;
    for (auto& v : nullspace(d.sub(rows, cs))) {
        v.resize(cells(n), 0);
        out.push_back(v);
    }
    return out;
}

std::vector<std::vector<Coeff>> HomologyOracle::boundaries(Index n, Index b) const {
    std::vector<std::vector<Coeff>> out;
    if (n + 1 > cx_->top_dim()) return out;
    for (Index j = 0; j < b; ++j) out.push_back(d_[n + 1].col(j));
    return out;
}

bool HomologyOracle::is_cycle(Index n, const std::vector<Coeff>& x) const {
    if (n == 0) return true;
    return max_support(mul(d_[n], x)) < 0;
}

bool HomologyOracle::new_class(Index n, const std::vector<Coeff>& x, Index b) const {
    long r = max_support(x);
    if (r < 0) return false;
    auto tail = [&](const std::vector<Coeff>& v) { return std::vector<Coeff>(v.begin() + r, v.end()); };
    std::vector<std::vector<Coeff>> bd;
    for (const auto& y : boundaries(n, b)) bd.push_back(tail(y));
    return !in_span(bd, tail(x), f_, cells(n) - Index(r));
}

bool HomologyOracle::bounds_within(Index n, const std::vector<Coeff>& x, Index b) const {
    return in_span(boundaries(n, b), x, f_, cells(n));
}

Dense total_boundary(const FilteredComplex& cx, const Field& f) {
    Index total = cx.num_cells_total();
    Dense d(total, total, f);
    for (Index g = 0; g < total; ++g) {
        auto [n, k] = cx.global_order()[g];
        if (n == 0) continue;
        for (const auto& e : cx.faces(n, k, f)) d.at(cx.global_index(n - 1, e.index), g) = e.coeff;
    }
    return d;
}

}  // namespace umatch::testing
