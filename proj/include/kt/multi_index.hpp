#ifndef KT_MULTI_INDEX_HPP
#define KT_MULTI_INDEX_HPP

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

namespace kt {

// Symmetric multi-index over base coordinates 1..n. Entries are kept
// sorted non-decreasing, so two multi-indices are equal iff their entry
// tuples are equal.
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
        std::sort(entries_.begin(), entries_.end());
    }

    static MultiIndex single(int lambda) { return MultiIndex(std::vector<int>{lambda}); }

    const std::vector<int>& entries() const { return entries_; }
    int order() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }

    MultiIndex merged(int lambda) const {
        std::vector<int> e = entries_;
        e.insert(std::upper_bound(e.begin(), e.end(), lambda), lambda);
        MultiIndex m;
        m.entries_ = std::move(e);
        return m;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
        return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(),
                                                      b.entries_.begin(), b.entries_.end());
    }

    // "(1,2,2)"; empty multi-index renders as "()".
    std::string to_string() const {
        std::string s = "(";
        for (size_t i = 0; i < entries_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(entries_[i]);
        }
        s += ')';
        return s;
    }

  private:
    std::vector<int> entries_;
};

// All multi-indices over 1..n of order exactly k, in increasing order.
std::vector<MultiIndex> multi_indices_of_order(int n, int k);

// All multi-indices over 1..n of order 0..max_order, in increasing order
// per block (order 0 first).
std::vector<MultiIndex> multi_indices_up_to(int n, int max_order);

} // namespace kt

#endif
