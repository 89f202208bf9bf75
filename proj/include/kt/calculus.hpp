#ifndef KT_CALCULUS_HPP
#define KT_CALCULUS_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kt/poly.hpp"

namespace kt {

// A concrete field component (field id, canonical index tuple).
using ComponentKey = std::pair<int, std::vector<int>>;

// Total derivative d_lambda: differentiates explicit coordinate dependence
// and shifts every occurring jet variable s^A_Lambda to s^A_{lambda+Lambda}.
GradedPoly total_derivative(const GradedPoly& p, int lambda);

// Iterated total derivative d_Lambda; order-independent.
GradedPoly total_derivative_multi(const GradedPoly& p, const MultiIndex& idx);

// Euler-Lagrange components E_A = sum over Lambda of (-1)^|Lambda|
// d_Lambda(dL/ds^A_Lambda) for every antifield-number-0 component of the
// table, zero components included.
std::map<ComponentKey, GradedPoly> euler_lagrange(const FieldTable& table, const Density& L);

// A vertical derivation given by its generating coefficients: component ->
// upsilon^A. Missing components act as zero.
struct GeneralizedVectorField {
    Parity parity = Parity::even;
    std::map<ComponentKey, GradedPoly> coefficients;

    const GradedPoly* coefficient(const ComponentKey& key) const {
        auto it = coefficients.find(key);
        return it == coefficients.end() ? nullptr : &it->second;
    }
};

// Throws std::invalid_argument unless every non-zero coefficient is parity
// homogeneous of parity [A] + parity(field).
void validate_parities(const FieldTable& table, const GeneralizedVectorField& field);

// Prolonged application as a left derivation:
//   sum over occurring s^A_Lambda of d_Lambda(upsilon^A) * dp/ds^A_Lambda.
GradedPoly prolong_apply(const GeneralizedVectorField& field, const GradedPoly& p);

// Prolonged application as a right derivation:
//   sum over occurring s^A_Lambda of (right dp/ds^A_Lambda) * d_Lambda(upsilon^A),
// satisfying delta(p q) = (-1)^{[q]} delta(p) q + p delta(q) for odd fields.
GradedPoly prolong_apply_right(const GeneralizedVectorField& field, const GradedPoly& p);

// Nilpotency criterion for the prolonged left derivation: false for even
// fields, otherwise true iff prolong_apply(field, upsilon^A) vanishes for
// every coefficient.
bool is_nilpotent(const GeneralizedVectorField& field);

// Bounded search for a witness of D = sum_lambda d_lambda F^lambda with
// every F^lambda of jet order <= jet_bound and total degree <= degree_bound,
// drawn from the listed fields (all table fields if empty). A nullopt means
// "not found within bounds", never "not a divergence"; exactness is only
// certified by the Euler-Lagrange obstruction.
std::optional<std::vector<GradedPoly>> is_total_divergence(const FieldTable& table,
                                                           const Density& D, int jet_bound,
                                                           int degree_bound,
                                                           std::vector<int> fields = {});

} // namespace kt

#endif
