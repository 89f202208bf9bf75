#include "kt/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace kt {

FieldTable::FieldTable(int n, std::vector<std::string> coord_names)
    : n_(n), coords_(std::move(coord_names)) {
    if (n < 1) throw std::invalid_argument("base dimension must be >= 1");
    if (static_cast<int>(coords_.size()) != n)
        throw std::invalid_argument("coordinate name count does not match base dimension");
}

FieldTable::FieldTable(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("base dimension must be >= 1");
    for (int i = 1; i <= n; ++i) coords_.push_back("x" + std::to_string(i));
}

int FieldTable::add_field(FieldSpec spec) {
    if (spec.name.empty()) throw std::invalid_argument("field name must be non-empty");
    if (find(spec.name) >= 0) throw std::invalid_argument("duplicate field name: " + spec.name);
    for (const auto& c : coords_)
        if (c == spec.name)
            throw std::invalid_argument("field name collides with coordinate: " + spec.name);
    for (const auto& g : spec.index_groups)
        if (g.count < 1) throw std::invalid_argument("index group count must be >= 1");
    fields_.push_back(std::move(spec));
    return static_cast<int>(fields_.size()) - 1;
}

int FieldTable::find(const std::string& name) const {
    for (size_t i = 0; i < fields_.size(); ++i)
        if (fields_[i].name == name) return static_cast<int>(i);
    return -1;
}

namespace {

void enumerate_group(int n, const IndexGroup& g, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == g.count) {
            out.push_back(cur);
            return;
        }
        int lo = g.sym == Symmetry::antisym ? start : 1;
        for (int i = lo; i <= n; ++i) {
            cur.push_back(i);
            self(self, g.sym == Symmetry::antisym ? i + 1 : 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
}

} // namespace

std::vector<std::vector<int>> FieldTable::components(int field_id) const {
    const FieldSpec& f = field(field_id);
    std::vector<std::vector<int>> acc = {{}};
    for (const auto& g : f.index_groups) {
        std::vector<std::vector<int>> group_tuples;
        enumerate_group(n_, g, group_tuples);
        std::vector<std::vector<int>> next;
        next.reserve(acc.size() * group_tuples.size());
        for (const auto& a : acc)
            for (const auto& t : group_tuples) {
                std::vector<int> merged = a;
                merged.insert(merged.end(), t.begin(), t.end());
                next.push_back(std::move(merged));
            }
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    return acc;
}

ComponentCanon FieldTable::canonicalize_component(int field_id, const std::vector<int>& raw) const {
    const FieldSpec& f = field(field_id);
    if (static_cast<int>(raw.size()) != f.index_count())
        throw std::invalid_argument("component arity mismatch for field " + f.name);
    ComponentCanon result;
    result.component.reserve(raw.size());
    size_t pos = 0;
    for (const auto& g : f.index_groups) {
        std::vector<int> part(raw.begin() + pos, raw.begin() + pos + g.count);
        pos += g.count;
        for (int idx : part)
            if (idx < 1 || idx > n_)
                throw std::invalid_argument("component index out of range for field " + f.name);
        if (g.sym == Symmetry::antisym) {
            // insertion sort, tracking the permutation sign
            for (size_t i = 1; i < part.size(); ++i)
                for (size_t j = i; j > 0 && part[j] < part[j - 1]; --j) {
                    std::swap(part[j], part[j - 1]);
                    result.sign = -result.sign;
                }
            for (size_t i = 1; i < part.size(); ++i)
                if (part[i] == part[i - 1]) {
                    result.sign = 0;
                    result.component.clear();
                    return result;
                }
        }
        result.component.insert(result.component.end(), part.begin(), part.end());
    }
    return result;
}

std::string FieldTable::component_name(int field_id, const std::vector<int>& comp) const {
    std::string s = field(field_id).name;
    if (!comp.empty()) {
        s += '[';
        for (size_t i = 0; i < comp.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(comp[i]);
        }
        s += ']';
    }
    return s;
}

JetVariable make_jet(const FieldTable& table, int field_id, std::vector<int> comp, MultiIndex jet) {
    const FieldSpec& f = table.field(field_id);
    ComponentCanon canon = table.canonicalize_component(field_id, comp);
    if (canon.sign != 1 || canon.component != comp)
        throw std::invalid_argument("component tuple is not canonical for field " + f.name);
    for (int lambda : jet.entries())
        if (lambda < 1 || lambda > table.dim())
            throw std::invalid_argument("jet index out of range");
    JetVariable v;
    v.field = field_id;
    v.component = std::move(comp);
    v.jet = std::move(jet);
    v.ant = f.antifield_number;
    v.parity = f.parity;
    return v;
}

std::string jet_variable_name(const FieldTable& table, const JetVariable& v) {
    std::string s = table.component_name(v.field, v.component);
    if (!v.jet.empty()) s += "_" + v.jet.to_string();
    return s;
}

} // namespace kt
