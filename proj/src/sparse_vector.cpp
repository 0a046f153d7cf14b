#include "umatch/sparse_vector.hpp"

#include <algorithm>

namespace umatch {

SparseVector SparseVector::from_entries(std::vector<Entry> entries, const Field& f) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.index < b.index; });
    SparseVector out;
    for (std::size_t k = 0; k < entries.size();) {
        Index i = entries[k].index;
        Coeff c = 0;
        for (; k < entries.size() && entries[k].index == i; ++k) c = f.add(c, f.from_int(entries[k].coeff));
        if (c != 0) out.e_.push_back({i, c});
    }
    return out;
}

SparseVector SparseVector::from_sorted(std::vector<Entry> entries) {
    SparseVector out;
    out.e_ = std::move(entries);
    return out;
}

Coeff SparseVector::at(Index i) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), i,
                               [](const Entry& a, Index j) { return a.index < j; });
    return (it != e_.end() && it->index == i) ? it->coeff : 0;
}

void SparseVector::push_back(Entry x) {
    if (!e_.empty() && e_.back().index >= x.index)
        throw InternalInconsistency("sparse vector entries out of order");
    if (x.coeff != 0) e_.push_back(x);
}

SparseVector add_scaled(const Field& f, const SparseVector& x, Coeff a, const SparseVector& y) {
    if (a == 0) return x;
    std::vector<Entry> out;
    out.reserve(x.size() + y.size());
    auto i = x.begin(), j = y.begin();
    while (i != x.end() || j != y.end()) {
        if (j == y.end() || (i != x.end() && i->index < j->index)) {
            out.push_back(*i++);
        } else if (i == x.end() || j->index < i->index) {
            out.push_back({j->index, f.mul(a, j->coeff)});
            ++j;
        } else {
            Coeff c = f.add(i->coeff, f.mul(a, j->coeff));
            if (c != 0) out.push_back({i->index, c});
            ++i;
            ++j;
        }
    }
    return SparseVector::from_sorted(std::move(out));
}

SparseVector scaled(const Field& f, const SparseVector& x, Coeff a) {
    if (a == 0) return {};
    std::vector<Entry> out(x.entries());
    for (auto& e : out) e.coeff = f.mul(e.coeff, a);
    return SparseVector::from_sorted(std::move(out));
}

Coeff dot(const Field& f, const SparseVector& x, const SparseVector& y) {
    Coeff s = 0;
    auto i = x.begin(), j = y.begin();
    while (i != x.end() && j != y.end()) {
        if (i->index < j->index) ++i;
        else if (j->index < i->index) ++j;
        else s = f.add(s, f.mul((i++)->coeff, (j++)->coeff));
    }
    return s;
}

SparseVector normalize_leading(const Field& f, const SparseVector& x) {
    if (x.empty()) return x;
    return scaled(f, x, f.inv(x[0].coeff));
}

}  // namespace umatch
