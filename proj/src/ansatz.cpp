#include "kt/ansatz.hpp"

#include <algorithm>
#include <stdexcept>

namespace kt {

std::vector<Monomial> enumerate_monomials(const FieldTable& table, const AnsatzSpec& spec) {
    std::vector<JetVariable> pool;
    auto jets = multi_indices_up_to(table.dim(), spec.jet_bound);
    for (int f : spec.fields)
        for (const auto& comp : table.components(f))
            for (const auto& jet : jets) pool.push_back(make_jet(table, f, comp, jet));
    std::sort(pool.begin(), pool.end());

    std::vector<Monomial> out;
    Monomial cur;
    // choose variable exponents in canonical order, then base powers
    auto emit_base = [&](auto&& self, int coord, int budget) -> void {
        if (!spec.ant || cur.ant() == *spec.ant) {
            if (!spec.parity || cur.parity() == *spec.parity) out.push_back(cur);
        }
        if (!spec.include_coords) return;
        for (int c = coord; c <= table.dim(); ++c) {
            for (int e = 1; e <= budget; ++e) {
                cur.base_powers.emplace_back(c, e);
                self(self, c + 1, budget - e);
                cur.base_powers.pop_back();
            }
        }
    };
    auto rec = [&](auto&& self, size_t next, int budget, int ant_so_far) -> void {
        emit_base(emit_base, 1, budget);
        for (size_t i = next; i < pool.size(); ++i) {
            const JetVariable& v = pool[i];
            if (spec.ant && ant_so_far + v.ant > *spec.ant) continue;
            int max_exp = v.is_odd() ? 1 : budget;
            for (int e = 1; e <= max_exp && e <= budget; ++e) {
                if (spec.ant && v.ant > 0 && ant_so_far + v.ant * e > *spec.ant) break;
                cur.vars.emplace_back(v, e);
                self(self, i + 1, budget - e, ant_so_far + v.ant * e);
                cur.vars.pop_back();
            }
        }
    };
    rec(rec, 0, spec.degree_bound, 0);
    std::sort(out.begin(), out.end());
    return out;
}

MonomialIndex::MonomialIndex(std::vector<Monomial> universe) : list_(std::move(universe)) {
    for (size_t i = 0; i < list_.size(); ++i) {
        auto [it, inserted] = pos_.emplace(list_[i], static_cast<int>(i));
        if (!inserted) throw std::invalid_argument("duplicate monomial in universe");
    }
}

int MonomialIndex::find(const Monomial& m) const {
    auto it = pos_.find(m);
    return it == pos_.end() ? -1 : it->second;
}

std::optional<DenseVec> MonomialIndex::pack(const GradedPoly& p) const {
    DenseVec v(list_.size(), Rat(0));
    for (const auto& [m, c] : p.terms()) {
        int i = find(m);
        if (i < 0) return std::nullopt;
        v[i] = c;
    }
    return v;
}

GradedPoly MonomialIndex::unpack(const DenseVec& v) const {
    GradedPoly p;
    for (size_t i = 0; i < v.size() && i < list_.size(); ++i)
        if (!is_zero(v[i])) p.add_term(list_[i], v[i]);
    return p;
}

int MonomialIndex::intern(const Monomial& m) {
    auto it = pos_.find(m);
    if (it != pos_.end()) return it->second;
    list_.push_back(m);
    pos_.emplace(m, static_cast<int>(list_.size()) - 1);
    return static_cast<int>(list_.size()) - 1;
}

SparseVec MonomialIndex::pack_interning(const GradedPoly& p) {
    SparseVec v;
    for (const auto& [m, c] : p.terms()) v.emplace_back(intern(m), c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

} // namespace kt
