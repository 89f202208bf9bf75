#ifndef KT_FIELD_HPP
#define KT_FIELD_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "kt/multi_index.hpp"

namespace kt {

enum class Parity : int { even = 0, odd = 1 };

inline Parity flip(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }
inline Parity parity_sum(Parity a, Parity b) {
    return (static_cast<int>(a) + static_cast<int>(b)) % 2 == 0 ? Parity::even : Parity::odd;
}

enum class Symmetry { none, antisym };

struct IndexGroup {
    int count = 0;
    Symmetry sym = Symmetry::none;
    friend bool operator==(const IndexGroup&, const IndexGroup&) = default;
};

enum class FieldRole { field, antifield, stage_antifield };

// Declaration of one field (or antifield) family. Concrete components are
// index tuples drawn from the index groups; antisymmetric groups only
// enumerate strictly increasing tuples.
struct FieldSpec {
    std::string name;
    Parity parity = Parity::even;
    int antifield_number = 0;
    std::vector<IndexGroup> index_groups;
    FieldRole role = FieldRole::field;
    int stage = -1;  // stage k for stage antifields, -1 otherwise
    int shadow = -1; // field id this antifield shadows, -1 otherwise

    int index_count() const {
        int c = 0;
        for (const auto& g : index_groups) c += g.count;
        return c;
    }
};

// Result of canonicalizing a raw component tuple: sign 0 means the
// component vanishes (repeated index in an antisymmetric group).
struct ComponentCanon {
    int sign = 1;
    std::vector<int> component;
};

// Field registry for one model: base dimension, coordinate names, and all
// declared field/antifield families in declaration order. Append-only, so
// field ids stay stable while a complex is extended.
class FieldTable {
  public:
    FieldTable() = default;
    FieldTable(int n, std::vector<std::string> coord_names);
    explicit FieldTable(int n);

    int dim() const { return n_; }
    const std::vector<std::string>& coords() const { return coords_; }
    const std::string& coord_name(int lambda) const { return coords_.at(lambda - 1); }

    int add_field(FieldSpec spec); // returns field id; rejects duplicate names
    int find(const std::string& name) const; // -1 if absent
    const FieldSpec& field(int id) const { return fields_.at(id); }
    int field_count() const { return static_cast<int>(fields_.size()); }
    const std::vector<FieldSpec>& fields() const { return fields_; }

    // Canonical component tuples of a field, in increasing order.
    std::vector<std::vector<int>> components(int field_id) const;

    ComponentCanon canonicalize_component(int field_id, const std::vector<int>& raw) const;

    // "B[1,2]"; scalar fields render as their bare name.
    std::string component_name(int field_id, const std::vector<int>& comp) const;

  private:
    int n_ = 0;
    std::vector<std::string> coords_;
    std::vector<FieldSpec> fields_;
};

// One jet variable s^A_Lambda: a concrete field component together with a
// symmetric multi-index of formal derivatives. Parity and antifield number
// are copied from the field spec so that monomial algebra needs no table.
struct JetVariable {
    int field = -1;
    std::vector<int> component;
    MultiIndex jet;
    int ant = 0;
    Parity parity = Parity::even;

    bool is_odd() const { return parity == Parity::odd; }

    friend bool operator==(const JetVariable& a, const JetVariable& b) {
        return a.field == b.field && a.component == b.component && a.jet == b.jet;
    }
    // Total order: (antifield number, declaration order, component, jet).
    friend std::strong_ordering operator<=>(const JetVariable& a, const JetVariable& b) {
        if (auto c = a.ant <=> b.ant; c != 0) return c;
        if (auto c = a.field <=> b.field; c != 0) return c;
        if (auto c = std::lexicographical_compare_three_way(
                a.component.begin(), a.component.end(), b.component.begin(), b.component.end());
            c != 0)
            return c;
        return a.jet <=> b.jet;
    }
};

// Validates that comp is canonical for the field and that jet entries lie
// in 1..n; throws std::invalid_argument otherwise.
JetVariable make_jet(const FieldTable& table, int field_id, std::vector<int> comp,
                     MultiIndex jet = MultiIndex());

std::string jet_variable_name(const FieldTable& table, const JetVariable& v);

} // namespace kt

#endif
