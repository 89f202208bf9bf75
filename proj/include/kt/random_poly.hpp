#ifndef KT_RANDOM_POLY_HPP
#define KT_RANDOM_POLY_HPP

#include <random>
#include <vector>

#include "kt/poly.hpp"

namespace kt {

using Rng = std::mt19937_64;

// Small non-zero rational with numerator in -max_num..max_num and
// denominator in 1..max_den.
Rat random_rational(Rng& rng, int max_num = 3, int max_den = 2);

// Sparse random combination of monomials drawn from a fixed universe.
// Returns the zero polynomial when the universe is empty.
GradedPoly random_poly(Rng& rng, const std::vector<Monomial>& universe, int max_terms = 4);

} // namespace kt

#endif
