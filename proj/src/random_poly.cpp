#include "kt/random_poly.hpp"

namespace kt {

Rat random_rational(Rng& rng, int max_num, int max_den) {
    std::uniform_int_distribution<int> num(1, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    std::uniform_int_distribution<int> coin(0, 1);
    Rat r(num(rng), den(rng));
    r.canonicalize();
    return coin(rng) ? r : -r;
}

GradedPoly random_poly(Rng& rng, const std::vector<Monomial>& universe, int max_terms) {
    GradedPoly p;
    if (universe.empty()) return p;
    std::uniform_int_distribution<int> count(1, max_terms);
    std::uniform_int_distribution<size_t> pick(0, universe.size() - 1);
    int terms = count(rng);
    for (int t = 0; t < terms; ++t) p.add_term(universe[pick(rng)], random_rational(rng));
    return p;
}

} // namespace kt
