#include "kt/ansatz.hpp"
#include "kt/calculus.hpp"

namespace kt {

std::optional<std::vector<GradedPoly>> is_total_divergence(const FieldTable& table,
                                                           const Density& D, int jet_bound,
                                                           int degree_bound,
                                                           std::vector<int> fields) {
    if (jet_bound < 0 || degree_bound < 0)
        throw std::invalid_argument("search bounds must be non-negative");
    const int n = table.dim();
    if (fields.empty())
        for (int f = 0; f < table.field_count(); ++f) fields.push_back(f);

    AnsatzSpec spec;
    spec.jet_bound = jet_bound;
    spec.degree_bound = degree_bound;
    spec.fields = std::move(fields);
    if (D.body.ant_homogeneous()) spec.ant = D.body.ant().value_or(0);
    if (D.body.parity_homogeneous() && !D.body.is_zero()) spec.parity = D.body.parity();
    MonomialIndex universe(enumerate_monomials(table, spec));

    // unknowns: one copy of the universe per base direction
    MonomialIndex image_rows;
    std::vector<SparseVec> columns;
    columns.reserve(static_cast<size_t>(n) * universe.size());
    for (int lambda = 1; lambda <= n; ++lambda)
        for (int i = 0; i < universe.size(); ++i) {
            GradedPoly dm = total_derivative(GradedPoly::monomial(Rat(1), universe.at(i)), lambda);
            columns.push_back(image_rows.pack_interning(dm));
        }
    SparseVec target = image_rows.pack_interning(D.body);

    auto solutions = solve_columns(columns, static_cast<int>(columns.size()), {target});
    if (!solutions[0]) return std::nullopt;
    const DenseVec& x = *solutions[0];
    std::vector<GradedPoly> witness(n);
    for (int lambda = 1; lambda <= n; ++lambda) {
        DenseVec part(x.begin() + static_cast<size_t>(lambda - 1) * universe.size(),
                      x.begin() + static_cast<size_t>(lambda) * universe.size());
        witness[lambda - 1] = universe.unpack(part);
    }
    return witness;
}

} // namespace kt
