#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "umatch/coeff.hpp"

namespace umatch {

using Index = std::size_t;
inline constexpr Index npos = std::numeric_limits<Index>::max();

struct Entry {
    Index index;
    Coeff coeff;
    bool operator==(const Entry&) const = default;
};

// Indices strictly increasing, no stored zeros.
class SparseVector {
public:
    SparseVector() = default;

    // Sorts, merges duplicate indices and drops zeros.
    static SparseVector from_entries(std::vector<Entry> entries, const Field& f);
    // Caller promises the invariant already holds.
    static SparseVector from_sorted(std::vector<Entry> entries);
    static SparseVector unit(Index i) { return from_sorted({{i, 1}}); }

    const std::vector<Entry>& entries() const { return e_; }
    std::size_t size() const { return e_.size(); }
    bool empty() const { return e_.empty(); }
    auto begin() const { return e_.begin(); }
    auto end() const { return e_.end(); }
    const Entry& operator[](std::size_t k) const { return e_[k]; }

    Coeff at(Index i) const;
    Index min_index() const { return e_.empty() ? npos : e_.front().index; }
    Index max_index() const { return e_.empty() ? npos : e_.back().index; }

    // Appends; index must exceed the current maximum.
    void push_back(Entry x);

    bool operator==(const SparseVector&) const = default;

private:
    std::vector<Entry> e_;
};

// x + a*y
SparseVector add_scaled(const Field& f, const SparseVector& x, Coeff a, const SparseVector& y);
SparseVector scaled(const Field& f, const SparseVector& x, Coeff a);
// Keeps entries whose index satisfies keep(index).
template <class Pred>
SparseVector filtered(const SparseVector& x, Pred keep) {
    SparseVector out;
    for (const auto& e : x)
        if (keep(e.index)) out.push_back(e);
    return out;
}
Coeff dot(const Field& f, const SparseVector& x, const SparseVector& y);

// Scale so the entry at the smallest index is 1. Zero stays zero.
SparseVector normalize_leading(const Field& f, const SparseVector& x);

}  // namespace umatch
