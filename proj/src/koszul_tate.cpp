#include "kt/koszul_tate.hpp"

#include <algorithm>

#include "kt/ansatz.hpp"
#include "kt/linalg.hpp"
#include "kt/random_poly.hpp"

namespace kt {

std::vector<int> KTComplex::fields_up_to_stage(int k) const {
    std::vector<int> out;
    for (int f = 0; f < table_.field_count(); ++f) {
        const FieldSpec& spec = table_.field(f);
        if (spec.role == FieldRole::stage_antifield && spec.stage > k) continue;
        out.push_back(f);
    }
    return out;
}

const StageOperator& KTComplex::operator_for(const ComponentKey& antifield_comp) const {
    auto it = antifield_ops_.find(antifield_comp);
    if (it == antifield_ops_.end())
        throw std::invalid_argument("no stage operator for component");
    return stages_[it->second.first][it->second.second];
}

GeneralizedVectorField KTComplex::differential(int up_to_stage) const {
    if (up_to_stage > max_stage()) throw std::invalid_argument("stage not registered");
    GeneralizedVectorField delta;
    delta.parity = Parity::odd;
    for (int f : base_fields_) {
        int g = sbar_ids_.at(f);
        for (const auto& comp : table_.components(f))
            delta.coefficients[{g, comp}] = el_.at({f, comp});
    }
    for (const auto& [comp, loc] : antifield_ops_) {
        if (loc.first > up_to_stage) continue;
        delta.coefficients[comp] = stages_[loc.first][loc.second].expression;
    }
    return delta;
}

KTComplex extend_with_antifields(const FieldTable& fields, const Density& L) {
    for (const FieldSpec& spec : fields.fields())
        if (spec.antifield_number != 0)
            throw std::invalid_argument("input table already contains antifields");
    for (const JetVariable& v : L.body.jet_variables())
        if (v.ant != 0) throw std::invalid_argument("Lagrangian contains antifield variables");
    if (!L.body.has_parity(Parity::even))
        throw std::invalid_argument("Lagrangian must be parity-even");

    KTComplex complex;
    complex.table_ = fields;
    complex.lagrangian_ = L;
    complex.el_ = euler_lagrange(fields, L);
    for (int f = 0; f < fields.field_count(); ++f) {
        complex.base_fields_.push_back(f);
        FieldSpec bar = fields.field(f);
        bar.name += "bar";
        bar.parity = flip(bar.parity);
        bar.antifield_number = 1;
        bar.role = FieldRole::antifield;
        bar.shadow = f;
        complex.sbar_ids_[f] = complex.table_.add_field(std::move(bar));
    }
    return complex;
}

KTComplex register_stage(const KTComplex& base, int k, std::vector<StageOperator> ops) {
    if (k != base.stage_count())
        throw std::invalid_argument("stages must be registered in order (next stage is " +
                                    std::to_string(base.stage_count()) + ")");
    if (ops.empty()) throw std::invalid_argument("empty stage");

    for (const StageOperator& op : ops) {
        if (op.expression.is_zero())
            throw std::invalid_argument("zero stage operator " + op.display_name());
        if (!op.expression.has_ant(k + 1))
            throw std::invalid_argument("operator " + op.display_name() +
                                        " must have antifield number " + std::to_string(k + 1));
        if (!op.expression.parity_homogeneous())
            throw std::invalid_argument("operator " + op.display_name() +
                                        " is not parity homogeneous");
        bool has_linear = false;
        for (const auto& [m, c] : op.expression.terms()) {
            int ant_factors = 0;
            bool single_linear = true;
            for (const auto& [v, e] : m.vars)
                if (v.ant > 0) {
                    ant_factors += e;
                    if (v.ant != k + 1 || e != 1) single_linear = false;
                }
            if (ant_factors == 1 && single_linear) has_linear = true;
            if (k == 0 && !(ant_factors == 1 && single_linear))
                throw std::invalid_argument("stage-0 operator " + op.display_name() +
                                            " must be linear in the antifields");
        }
        if (!has_linear)
            throw std::invalid_argument("operator " + op.display_name() +
                                        " has no part linear in the previous-stage antifields");
    }

    KTComplex next = base;
    next.stages_.push_back(ops);

    // group into antifield families, in first-appearance order
    std::vector<std::string> family_order;
    std::map<std::string, std::vector<int>> members;
    for (size_t i = 0; i < ops.size(); ++i) {
        if (!members.count(ops[i].family)) family_order.push_back(ops[i].family);
        members[ops[i].family].push_back(static_cast<int>(i));
    }
    for (const std::string& family : family_order) {
        const std::vector<int>& idx = members[family];
        const StageOperator& first = ops[idx.front()];
        size_t comp_len = first.component.size();
        Parity op_parity = *ops[idx.front()].expression.parity();
        for (int i : idx) {
            if (ops[i].component.size() != comp_len)
                throw std::invalid_argument("family " + family + " mixes component arities");
            if (*ops[i].expression.parity() != op_parity)
                throw std::invalid_argument("family " + family + " mixes parities");
        }
        FieldSpec bar;
        bar.name = family + "bar";
        bar.parity = flip(op_parity);
        bar.antifield_number = k + 2;
        bar.role = FieldRole::stage_antifield;
        bar.stage = k;
        if (comp_len > 0) bar.index_groups.push_back({static_cast<int>(comp_len), Symmetry::antisym});
        int id = next.table_.add_field(std::move(bar));

        auto expected = next.table_.components(id);
        std::vector<std::vector<int>> given;
        for (int i : idx) given.push_back(ops[i].component);
        std::sort(given.begin(), given.end());
        if (given != expected)
            throw std::invalid_argument("family " + family +
                                        " must cover every antisymmetric component exactly once");
        for (int i : idx) next.antifield_ops_[{id, ops[i].component}] = {k, i};
    }

    // eager nilpotency: delta_k applied to each new operator must vanish
    GeneralizedVectorField delta = next.differential(k);
    for (const StageOperator& op : ops) {
        GradedPoly residual = prolong_apply_right(delta, op.expression);
        if (!residual.is_zero())
            throw registration_error(op.display_name(), residual,
                                     residual.to_string(next.table_));
    }
    return next;
}

std::vector<NilpotencyEntry> check_nilpotency(const KTComplex& complex) {
    GeneralizedVectorField delta = complex.kt_differential();
    std::vector<NilpotencyEntry> report;
    for (const auto& [key, coeff] : delta.coefficients) {
        NilpotencyEntry entry;
        entry.generator = complex.table().component_name(key.first, key.second);
        entry.residual = prolong_apply_right(delta, coeff);
        entry.pass = entry.residual.is_zero();
        report.push_back(std::move(entry));
    }
    return report;
}

bool is_cycle(const KTComplex& complex, const Density& phi) {
    if (!phi.body.ant_homogeneous())
        throw std::invalid_argument("density is not antifield-number homogeneous");
    return prolong_apply_right(complex.kt_differential(), phi.body).is_zero();
}

namespace {

// Witness search for delta(psi) = phi over a fixed sector ansatz.
std::optional<GradedPoly> boundary_witness(const FieldTable& table,
                                           const GeneralizedVectorField& delta,
                                           const GradedPoly& phi, const std::vector<int>& fields,
                                           int ant, int jet_bound, int degree_bound) {
    AnsatzSpec spec;
    spec.jet_bound = jet_bound;
    spec.degree_bound = degree_bound;
    spec.ant = ant;
    spec.fields = fields;
    if (!phi.is_zero() && phi.parity_homogeneous()) spec.parity = flip(*phi.parity());
    MonomialIndex universe(enumerate_monomials(table, spec));

    MonomialIndex rows;
    std::vector<SparseVec> columns;
    columns.reserve(universe.size());
    for (int i = 0; i < universe.size(); ++i) {
        GradedPoly image =
            prolong_apply_right(delta, GradedPoly::monomial(Rat(1), universe.at(i)));
        columns.push_back(rows.pack_interning(image));
    }
    SparseVec target = rows.pack_interning(phi);
    auto solutions = solve_columns(columns, universe.size(), {target});
    if (!solutions[0]) return std::nullopt;
    return universe.unpack(*solutions[0]);
}

} // namespace

std::optional<Density> is_boundary(const KTComplex& complex, const Density& phi, int jet_bound,
                                   int degree_bound) {
    if (!is_cycle(complex, phi))
        throw std::invalid_argument("is_boundary requires a cycle");
    if (phi.body.is_zero()) return Density{};
    int ant = *phi.body.ant();
    auto witness = boundary_witness(complex.table(), complex.kt_differential(), phi.body,
                                    complex.fields_up_to_stage(complex.max_stage()), ant + 1,
                                    jet_bound, degree_bound);
    if (!witness) return std::nullopt;
    return Density{std::move(*witness)};
}

NoetherBasis noether_search(const KTComplex& complex, int jet_bound, int degree_bound,
                            std::vector<int> slot_fields) {
    if (jet_bound < 0 || degree_bound < 0)
        throw std::invalid_argument("search bounds must be non-negative");
    const FieldTable& table = complex.table();
    if (slot_fields.empty()) slot_fields = complex.base_fields();

    // slots: one unknown coefficient function per (component, Lambda)
    struct Slot {
        ComponentKey comp;
        MultiIndex jet;
        JetVariable sbar;     // sbar_{Lambda A}
        GradedPoly d_el;      // d_Lambda E_A
        Parity field_parity;
    };
    std::vector<Slot> slots;
    auto jets = multi_indices_up_to(table.dim(), jet_bound);
    for (int f : slot_fields)
        for (const auto& comp : table.components(f))
            for (const auto& jet : jets) {
                Slot s;
                s.comp = {f, comp};
                s.jet = jet;
                s.sbar = make_jet(table, complex.antifield_of(f), comp, jet);
                s.d_el = total_derivative_multi(complex.el().at({f, comp}), jet);
                s.field_parity = table.field(f).parity;
                slots.push_back(std::move(s));
            }

    AnsatzSpec coeff_spec;
    coeff_spec.jet_bound = jet_bound;
    coeff_spec.degree_bound = degree_bound;
    coeff_spec.ant = 0;
    coeff_spec.fields = complex.base_fields();
    MonomialIndex coeffs(enumerate_monomials(table, coeff_spec));

    const int S = static_cast<int>(slots.size());
    const int U = coeffs.size();
    const int ncols = S * U;

    // cycle condition: sum over slots of Phi^{A,Lambda} d_Lambda E_A = 0
    MonomialIndex rows;
    std::vector<SparseVec> columns;
    columns.reserve(ncols);
    for (int s = 0; s < S; ++s)
        for (int u = 0; u < U; ++u) {
            GradedPoly image =
                mul(GradedPoly::monomial(Rat(1), coeffs.at(u)), slots[s].d_el);
            columns.push_back(rows.pack_interning(image));
        }
    std::vector<DenseVec> kernel = nullspace(columns, ncols);

    // trivial solutions: Phi^{A,Lambda} = sum T^{(A Lambda)(B Sigma)} d_Sigma E_B
    // with a graded-antisymmetric T drawn from the same coefficient bounds.
    // Components of a generator outside the ansatz space are tracked in
    // extra coordinates; only generator combinations supported inside the
    // ansatz space enter the quotient.
    std::map<std::pair<int, Monomial>, int> extra_coords;
    auto coord_of = [&](int s, const Monomial& m) -> int {
        int u = coeffs.find(m);
        if (u >= 0) return s * U + u;
        auto [it, inserted] = extra_coords.emplace(std::make_pair(s, m), 0);
        if (inserted) it->second = ncols + static_cast<int>(extra_coords.size()) - 1;
        return it->second;
    };
    std::vector<std::map<int, Rat>> generators;
    auto add_block = [&](std::map<int, Rat>& gen, int s, const GradedPoly& p) {
        for (const auto& [m, c] : p.terms()) {
            int col = coord_of(s, m);
            auto [it, inserted] = gen.emplace(col, c);
            if (!inserted) {
                it->second += c;
                if (is_zero(it->second)) gen.erase(it);
            }
        }
    };
    for (int s1 = 0; s1 < S; ++s1)
        for (int s2 = s1; s2 < S; ++s2) {
            bool both_odd_sign =
                (static_cast<int>(slots[s1].field_parity) * static_cast<int>(slots[s2].field_parity)) %
                    2 ==
                1;
            if (s1 == s2 && !both_odd_sign) continue; // diagonal vanishes for even fields
            for (int u = 0; u < U; ++u) {
                GradedPoly t = GradedPoly::monomial(Rat(1), coeffs.at(u));
                std::map<int, Rat> gen;
                add_block(gen, s1, mul(t, slots[s2].d_el));
                if (s1 != s2) {
                    Rat sign = both_odd_sign ? Rat(1) : Rat(-1);
                    add_block(gen, s2, sign * mul(t, slots[s1].d_el));
                }
                if (!gen.empty()) generators.push_back(std::move(gen));
            }
        }

    std::vector<DenseVec> trivial_inside;
    if (!generators.empty()) {
        // combinations of generators vanishing on the extra coordinates
        std::vector<SparseVec> gen_cols(generators.size());
        for (size_t g = 0; g < generators.size(); ++g)
            for (const auto& [col, c] : generators[g])
                if (col >= ncols) gen_cols[g].emplace_back(col - ncols, c);
        std::vector<DenseVec> combos = nullspace(gen_cols, static_cast<int>(gen_cols.size()));
        for (const auto& combo : combos) {
            DenseVec v(ncols, Rat(0));
            for (size_t g = 0; g < generators.size(); ++g) {
                if (is_zero(combo[g])) continue;
                for (const auto& [col, c] : generators[g])
                    if (col < ncols) v[col] += combo[g] * c;
            }
            if (to_sparse(v).empty()) continue;
            trivial_inside.push_back(std::move(v));
        }
    }

    Rref trivial_span(ncols);
    int trivial_dim = 0;
    for (const auto& v : trivial_inside)
        if (trivial_span.add_row(to_sparse(v))) ++trivial_dim;

    NoetherBasis result;
    result.cycle_dim = static_cast<int>(kernel.size());
    result.trivial_dim = trivial_dim;
    std::vector<DenseVec> reps = quotient_basis(kernel, trivial_inside, ncols);
    for (const auto& rep : reps) {
        GradedPoly phi;
        for (int s = 0; s < S; ++s)
            for (int u = 0; u < U; ++u) {
                const Rat& c = rep[s * U + u];
                if (is_zero(c)) continue;
                phi += c * mul(GradedPoly::monomial(Rat(1), coeffs.at(u)),
                               GradedPoly::variable(slots[s].sbar));
            }
        result.basis.push_back(Density{std::move(phi)});
    }
    return result;
}

ProbeReport regularity_probe(const KTComplex& complex, int k, int jet_bound, int degree_bound,
                             int trials, unsigned long long seed, int witness_jet_bound,
                             int witness_degree_bound) {
    if (k < 0 || k > complex.max_stage())
        throw std::invalid_argument("probe stage out of range");
    if (witness_jet_bound < 0) witness_jet_bound = jet_bound;
    if (witness_degree_bound < 0) witness_degree_bound = degree_bound;
    ProbeReport report;
    report.stage = k;
    const FieldTable& table = complex.table();
    int next_stage = std::min(k + 1, complex.max_stage());
    GeneralizedVectorField delta_k = complex.differential(k);
    GeneralizedVectorField delta_next = complex.differential(next_stage);
    std::vector<int> cycle_fields = complex.fields_up_to_stage(k);
    std::vector<int> witness_fields = complex.fields_up_to_stage(next_stage);

    auto witness_for = [&](const GradedPoly& phi) -> bool {
        if (phi.is_zero()) return true;
        return boundary_witness(table, delta_next, phi, witness_fields, *phi.ant() + 1,
                                witness_jet_bound, witness_degree_bound)
            .has_value();
    };

    // random delta_k-boundaries of the sector
    AnsatzSpec psi_spec;
    psi_spec.jet_bound = jet_bound;
    psi_spec.degree_bound = degree_bound;
    psi_spec.ant = k + 4;
    psi_spec.fields = cycle_fields;
    std::vector<Monomial> psi_universe = enumerate_monomials(table, psi_spec);
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        GradedPoly psi = random_poly(rng, psi_universe);
        GradedPoly phi = prolong_apply_right(delta_k, psi);
        ++report.boundary_trials;
        if (witness_for(phi)) {
            ++report.boundary_pass;
        } else {
            ++report.inconclusive;
            report.unresolved.push_back(phi);
        }
    }

    // bounded sweep of all delta_k-cycles in the sector
    AnsatzSpec sector;
    sector.jet_bound = jet_bound;
    sector.degree_bound = degree_bound;
    sector.ant = k + 3;
    sector.fields = cycle_fields;
    MonomialIndex universe(enumerate_monomials(table, sector));
    MonomialIndex rows;
    std::vector<SparseVec> columns;
    for (int i = 0; i < universe.size(); ++i) {
        GradedPoly image = prolong_apply_right(delta_k, GradedPoly::monomial(Rat(1), universe.at(i)));
        columns.push_back(rows.pack_interning(image));
    }
    std::vector<DenseVec> kernel = nullspace(columns, universe.size());
    report.kernel_dim = static_cast<int>(kernel.size());
    for (const auto& vec : kernel) {
        GradedPoly cycle = universe.unpack(vec);
        if (witness_for(cycle)) {
            ++report.kernel_pass;
        } else {
            ++report.inconclusive;
            report.unresolved.push_back(cycle);
        }
    }
    return report;
}

} // namespace kt
