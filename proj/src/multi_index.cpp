#include "kt/multi_index.hpp"

namespace kt {

std::vector<MultiIndex> multi_indices_of_order(int n, int k) {
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    // non-decreasing tuples over 1..n
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.emplace_back(MultiIndex(cur));
            return;
        }
        for (int i = start; i <= n; ++i) {
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int max_order) {
    std::vector<MultiIndex> out;
    for (int k = 0; k <= max_order; ++k) {
        auto block = multi_indices_of_order(n, k);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

} // namespace kt
