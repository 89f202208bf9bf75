#ifndef KT_ANSATZ_HPP
#define KT_ANSATZ_HPP

#include <map>
#include <optional>
#include <vector>

#include "kt/linalg.hpp"
#include "kt/poly.hpp"

namespace kt {

// Bounds and sector constraints for a finite monomial universe.
struct AnsatzSpec {
    int jet_bound = 0;    // max |Lambda| on every jet factor
    int degree_bound = 0; // max total degree (base powers + variable exponents)
    std::optional<int> ant;       // required antifield number of each monomial
    std::optional<Parity> parity; // required parity of each monomial
    std::vector<int> fields;      // field ids the variables are drawn from
    bool include_coords = true;   // allow explicit base-coordinate powers
};

// All canonical monomials satisfying the spec, in increasing monomial
// order. The variable pool is every component of every listed field at
// every multi-index of order <= jet_bound.
std::vector<Monomial> enumerate_monomials(const FieldTable& table, const AnsatzSpec& spec);

// Bijection between a fixed monomial universe and 0..size-1, used to pack
// polynomials into exact vectors.
class MonomialIndex {
  public:
    MonomialIndex() = default;
    explicit MonomialIndex(std::vector<Monomial> universe);

    int size() const { return static_cast<int>(list_.size()); }
    const Monomial& at(int i) const { return list_.at(i); }
    int find(const Monomial& m) const; // -1 if absent

    // Packs a polynomial supported on the universe; nullopt if any term
    // falls outside.
    std::optional<DenseVec> pack(const GradedPoly& p) const;
    GradedPoly unpack(const DenseVec& v) const;

    // Interning variant: monomials outside the current universe are
    // appended. Used to build row indices of linear maps incrementally.
    int intern(const Monomial& m);
    SparseVec pack_interning(const GradedPoly& p);

  private:
    std::vector<Monomial> list_;
    std::map<Monomial, int> pos_;
};

} // namespace kt

#endif
