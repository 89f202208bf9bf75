#ifndef KT_POLY_HPP
#define KT_POLY_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kt/field.hpp"
#include "kt/rational.hpp"

namespace kt {

// One canonical monomial: explicit base-coordinate powers times an ordered
// product of jet variables. Odd variables appear with exponent one; the
// Koszul sign produced by any reordering is absorbed into the coefficient
// at construction time (see normalize_product).
struct Monomial {
    std::vector<std::pair<int, int>> base_powers;     // (coordinate 1..n, exp>0), sorted
    std::vector<std::pair<JetVariable, int>> vars;    // sorted by variable order, exp>0

    bool is_one() const { return base_powers.empty() && vars.empty(); }
    Parity parity() const;
    int ant() const;
    int total_degree() const;
    int jet_order() const; // max |Lambda| over factors, 0 for constants

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = std::lexicographical_compare_three_way(a.vars.begin(), a.vars.end(),
                                                            b.vars.begin(), b.vars.end());
            c != 0)
            return c;
        return std::lexicographical_compare_three_way(a.base_powers.begin(), a.base_powers.end(),
                                                      b.base_powers.begin(), b.base_powers.end());
    }
};

// A raw product factor handed to normalize_product: either a jet variable
// or a base-coordinate power.
struct BasePower {
    int coord = 0;
    int exp = 1;
};
using Factor = std::variant<JetVariable, BasePower>;

// Graded-commutative polynomial in canonical form: a term map from
// canonical monomials to non-zero rational coefficients.
class GradedPoly {
  public:
    GradedPoly() = default;

    static GradedPoly constant(Rat c);
    static GradedPoly variable(const JetVariable& v);
    static GradedPoly coordinate(int lambda);
    static GradedPoly monomial(Rat c, Monomial m); // m must be canonical

    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rat& c); // merges, drops zeros

    GradedPoly& operator+=(const GradedPoly& o);
    GradedPoly& operator-=(const GradedPoly& o);
    GradedPoly& operator*=(const Rat& c);
    friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
    friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
    friend GradedPoly operator*(GradedPoly a, const Rat& c) { return a *= c; }
    friend GradedPoly operator*(const Rat& c, GradedPoly a) { return a *= c; }
    GradedPoly operator-() const;
    friend bool operator==(const GradedPoly&, const GradedPoly&) = default;

    // Parity of a parity-homogeneous polynomial; nullopt for the zero
    // polynomial (which passes every homogeneity check) and for mixed input.
    std::optional<Parity> parity() const;
    bool parity_homogeneous() const;
    bool has_parity(Parity p) const; // true for zero

    // Antifield number of an Ant-homogeneous polynomial; nullopt for zero
    // or mixed input.
    std::optional<int> ant() const;
    bool ant_homogeneous() const;
    bool has_ant(int a) const; // true for zero

    int total_degree() const; // max over terms, 0 for zero
    int jet_order() const;    // max over terms, 0 for zero

    // Distinct jet variables occurring in any term, in canonical order.
    std::vector<JetVariable> jet_variables() const;

    // Exact evaluation at an even point: jet variables through `values`,
    // coordinates through `coord_values` (1-based). Throws on odd variables.
    Rat evaluate(const std::function<Rat(const JetVariable&)>& values,
                 const std::vector<Rat>& coord_values) const;

    std::string to_string(const FieldTable& table) const;

  private:
    std::map<Monomial, Rat> terms_;
};

// Canonical form of coeff * f1 * f2 * ... with the factors in the given
// order. Reordering odd factors contributes the Koszul sign; a repeated odd
// factor yields the zero polynomial.
GradedPoly normalize_product(const std::vector<Factor>& factors, const Rat& coeff);

// Graded-commutative product.
GradedPoly mul(const GradedPoly& p, const GradedPoly& q);

// Graded left derivative with respect to a jet variable: the factor is
// moved to the leftmost position (Koszul sign) and removed.
GradedPoly left_partial(const GradedPoly& p, const JetVariable& v);

// Graded right derivative: the factor is moved to the rightmost position.
GradedPoly right_partial(const GradedPoly& p, const JetVariable& v);

// A Lagrangian-type density L = poly * omega; the volume factor is
// implicit and never manipulated.
struct Density {
    GradedPoly body;
    friend bool operator==(const Density&, const Density&) = default;
};

} // namespace kt

#endif
