#include "kt/calculus.hpp"

#include <stdexcept>

namespace kt {

GradedPoly total_derivative(const GradedPoly& p, int lambda) {
    if (lambda < 1) throw std::invalid_argument("base index must be >= 1");
    GradedPoly out;
    for (const auto& [m, c] : p.terms()) {
        // explicit dependence on x^lambda
        for (size_t i = 0; i < m.base_powers.size(); ++i) {
            const auto& [coord, exp] = m.base_powers[i];
            if (coord != lambda) continue;
            Monomial rest = m;
            if (exp == 1)
                rest.base_powers.erase(rest.base_powers.begin() + i);
            else
                rest.base_powers[i].second = exp - 1;
            out.add_term(rest, c * exp);
            break;
        }
        // jet shift: graded Leibniz of an even derivation, each factor
        // replaced in place by its lambda-prolongation
        for (size_t i = 0; i < m.vars.size(); ++i) {
            const auto& [v, e] = m.vars[i];
            JetVariable shifted = v;
            shifted.jet = v.jet.merged(lambda);
            std::vector<Factor> factors;
            for (const auto& [coord, exp] : m.base_powers)
                factors.push_back(BasePower{coord, exp});
            for (size_t j = 0; j < m.vars.size(); ++j) {
                int rep = m.vars[j].second - (j == i ? 1 : 0);
                for (int r = 0; r < rep; ++r) factors.push_back(m.vars[j].first);
                if (j == i) factors.push_back(shifted);
            }
            out += normalize_product(factors, c * e);
        }
    }
    return out;
}

GradedPoly total_derivative_multi(const GradedPoly& p, const MultiIndex& idx) {
    GradedPoly out = p;
    for (int lambda : idx.entries()) out = total_derivative(out, lambda);
    return out;
}

std::map<ComponentKey, GradedPoly> euler_lagrange(const FieldTable& table, const Density& L) {
    std::map<ComponentKey, GradedPoly> el;
    for (int f = 0; f < table.field_count(); ++f) {
        if (table.field(f).antifield_number != 0) continue;
        for (const auto& comp : table.components(f)) el[{f, comp}] = GradedPoly{};
    }
    for (const JetVariable& v : L.body.jet_variables()) {
        ComponentKey key{v.field, v.component};
        auto it = el.find(key);
        if (it == el.end()) continue; // antifield variable, not varied here
        GradedPoly contribution = total_derivative_multi(left_partial(L.body, v), v.jet);
        if (v.jet.order() % 2) contribution = -contribution;
        it->second += contribution;
    }
    return el;
}

void validate_parities(const FieldTable& table, const GeneralizedVectorField& field) {
    for (const auto& [key, coeff] : field.coefficients) {
        if (coeff.is_zero()) continue;
        if (!coeff.parity_homogeneous())
            throw std::invalid_argument("derivation coefficient is not parity homogeneous");
        Parity expected = parity_sum(table.field(key.first).parity, field.parity);
        if (!coeff.has_parity(expected))
            throw std::invalid_argument("derivation coefficient has wrong parity for " +
                                        table.component_name(key.first, key.second));
    }
}

GradedPoly prolong_apply(const GeneralizedVectorField& field, const GradedPoly& p) {
    GradedPoly out;
    for (const JetVariable& v : p.jet_variables()) {
        const GradedPoly* u = field.coefficient({v.field, v.component});
        if (u == nullptr || u->is_zero()) continue;
        out += mul(total_derivative_multi(*u, v.jet), left_partial(p, v));
    }
    return out;
}

GradedPoly prolong_apply_right(const GeneralizedVectorField& field, const GradedPoly& p) {
    GradedPoly out;
    for (const JetVariable& v : p.jet_variables()) {
        const GradedPoly* u = field.coefficient({v.field, v.component});
        if (u == nullptr || u->is_zero()) continue;
        out += mul(right_partial(p, v), total_derivative_multi(*u, v.jet));
    }
    return out;
}

bool is_nilpotent(const GeneralizedVectorField& field) {
    if (field.parity == Parity::even) return false;
    for (const auto& [key, coeff] : field.coefficients)
        if (!prolong_apply(field, coeff).is_zero()) return false;
    return true;
}

} // namespace kt
