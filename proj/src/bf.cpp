#include "kt/bf.hpp"

#include <chrono>

#include "kt/ansatz.hpp"
#include "kt/linalg.hpp"

namespace kt {

int levi_civita(const std::vector<int>& indices) {
    int sign = 1;
    for (size_t i = 0; i < indices.size(); ++i)
        for (size_t j = i + 1; j < indices.size(); ++j) {
            if (indices[i] == indices[j]) return 0;
            if (indices[i] > indices[j]) sign = -sign;
        }
    return sign;
}

namespace {

// Strictly increasing index tuples of the given length over 1..n.
std::vector<std::vector<int>> increasing_tuples(int n, int len) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

std::string stage_family(int k) { return "D" + std::to_string(k); }

// sum over mu of sign * d_mu(antifield[(mu, tuple...) canonicalized]).
GradedPoly contracted_derivative(const FieldTable& table, int antifield_id,
                                 const std::vector<int>& tuple) {
    GradedPoly out;
    for (int mu = 1; mu <= table.dim(); ++mu) {
        std::vector<int> raw;
        raw.push_back(mu);
        raw.insert(raw.end(), tuple.begin(), tuple.end());
        ComponentCanon canon = table.canonicalize_component(antifield_id, raw);
        if (canon.sign == 0) continue;
        JetVariable v = make_jet(table, antifield_id, canon.component, MultiIndex::single(mu));
        out += Rat(canon.sign) * GradedPoly::variable(v);
    }
    return out;
}

} // namespace

BFModel build_bf(int n) {
    if (n < 2 || n > kBFMaxDim)
        throw std::invalid_argument("BF dimension must be between 2 and " +
                                    std::to_string(kBFMaxDim));
    FieldTable table(n);
    FieldSpec a;
    a.name = "A";
    int field_a = table.add_field(a);
    FieldSpec b;
    b.name = "B";
    b.index_groups.push_back({n - 1, Symmetry::antisym});
    int field_b = table.add_field(b);

    // L = A * sum over mu and increasing nu-tuples of eps^{mu nu...} d_mu B_{nu...}
    GradedPoly body;
    JetVariable var_a = make_jet(table, field_a, {});
    for (const auto& comp : table.components(field_b))
        for (int mu = 1; mu <= n; ++mu) {
            std::vector<int> word;
            word.push_back(mu);
            word.insert(word.end(), comp.begin(), comp.end());
            int eps = levi_civita(word);
            if (eps == 0) continue;
            JetVariable db = make_jet(table, field_b, comp, MultiIndex::single(mu));
            body += Rat(eps) * mul(GradedPoly::variable(var_a), GradedPoly::variable(db));
        }

    BFModel model;
    model.n = n;
    model.field_a = field_a;
    model.field_b = field_b;
    model.complex = extend_with_antifields(table, Density{body});

    // stage 0: Delta^{nu_2..nu_{n-1}} = d_{nu_1} sbar^{nu_1 nu_2..nu_{n-1}}
    int prev_antifield = model.complex.antifield_of(field_b);
    for (int k = 0; k <= n - 2; ++k) {
        std::vector<StageOperator> ops;
        for (const auto& tuple : increasing_tuples(n, n - k - 2)) {
            StageOperator op;
            op.family = stage_family(k);
            op.component = tuple;
            op.expression = contracted_derivative(model.complex.table(), prev_antifield, tuple);
            ops.push_back(std::move(op));
        }
        model.complex = register_stage(model.complex, k, std::move(ops));
        prev_antifield = model.complex.table().find(stage_family(k) + "bar");
    }
    return model;
}

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

} // namespace

std::vector<CheckEntry> verify_bf(const BFModel& model, const BFVerifyOptions& options) {
    const int n = model.n;
    const KTComplex& complex = model.complex;
    const FieldTable& table = complex.table();
    std::vector<CheckEntry> entries;

    // (a) Noether identity: contracted divergence of the B-sector
    // Euler-Lagrange components vanishes.
    {
        int bbar = complex.antifield_of(model.field_b);
        for (const auto& tuple : increasing_tuples(n, n - 2)) {
            Timer timer;
            GradedPoly residual;
            for (int mu = 1; mu <= n; ++mu) {
                std::vector<int> raw;
                raw.push_back(mu);
                raw.insert(raw.end(), tuple.begin(), tuple.end());
                ComponentCanon canon = table.canonicalize_component(bbar, raw);
                if (canon.sign == 0) continue;
                residual += Rat(canon.sign) *
                            total_derivative(complex.el().at({model.field_b, canon.component}), mu);
            }
            CheckEntry e;
            StageOperator label{stage_family(0), tuple, {}};
            e.name = "noether_identity/" + label.display_name();
            e.status = residual.is_zero() ? CheckStatus::pass : CheckStatus::fail;
            if (!residual.is_zero()) e.residual = residual.to_string(table);
            e.timing_ms = timer.ms();
            entries.push_back(std::move(e));
        }
    }

    // (b) k-stage identities: contracted divergence of the stage-k
    // operators vanishes, k = 0..n-3.
    for (int k = 0; k + 1 <= n - 2; ++k) {
        int afield = table.find(stage_family(k) + "bar");
        for (const auto& tuple : increasing_tuples(n, n - k - 3)) {
            Timer timer;
            GradedPoly residual;
            for (int mu = 1; mu <= n; ++mu) {
                std::vector<int> raw;
                raw.push_back(mu);
                raw.insert(raw.end(), tuple.begin(), tuple.end());
                ComponentCanon canon = table.canonicalize_component(afield, raw);
                if (canon.sign == 0) continue;
                residual +=
                    Rat(canon.sign) *
                    total_derivative(complex.operator_for({afield, canon.component}).expression,
                                     mu);
            }
            CheckEntry e;
            StageOperator label{stage_family(k + 1), tuple, {}};
            e.name = "stage_identity/" + label.display_name();
            e.status = residual.is_zero() ? CheckStatus::pass : CheckStatus::fail;
            if (!residual.is_zero()) e.residual = residual.to_string(table);
            e.timing_ms = timer.ms();
            entries.push_back(std::move(e));
        }
    }

    // (c) nilpotency of the full differential on every generator
    {
        Timer timer;
        auto nil = check_nilpotency(complex);
        double each = timer.ms() / static_cast<double>(nil.size());
        for (const auto& item : nil) {
            CheckEntry e;
            e.name = "nilpotency/" + item.generator;
            e.status = item.pass ? CheckStatus::pass : CheckStatus::fail;
            if (!item.pass) e.residual = item.residual.to_string(table);
            e.timing_ms = each;
            entries.push_back(std::move(e));
        }
    }

    // (d) Noether search recovers exactly the span of the stage-0 operators
    {
        Timer timer;
        NoetherBasis found =
            noether_search(complex, options.search_jet_bound, options.search_degree_bound);
        const auto& ops = complex.stage(0);
        MonomialIndex rows;
        std::vector<SparseVec> vectors;
        for (const auto& d : found.basis) vectors.push_back(rows.pack_interning(d.body));
        for (const auto& op : ops) vectors.push_back(rows.pack_interning(op.expression));
        const int total_cols = static_cast<int>(rows.size() == 0 ? 1 : rows.size());
        Rref union_span(total_cols);
        Rref basis_span(total_cols);
        int rank_basis = 0, rank_union = 0;
        for (const auto& v : vectors)
            if (union_span.add_row(v)) ++rank_union;
        for (size_t i = 0; i < found.basis.size(); ++i)
            if (basis_span.add_row(vectors[i])) ++rank_basis;
        CheckEntry e;
        e.name = "noether_recovery";
        bool dims = found.basis.size() == ops.size() && rank_basis == static_cast<int>(ops.size());
        bool same_span = rank_union == static_cast<int>(ops.size());
        e.status = dims && same_span
                       ? CheckStatus::pass
                       : (found.trivial_dim > 0 ? CheckStatus::inconclusive : CheckStatus::fail);
        if (e.status == CheckStatus::fail)
            e.residual = found.basis.empty() ? "(empty basis)" : found.basis.front().body.to_string(table);
        e.note = "basis_dim=" + std::to_string(found.basis.size()) +
                 " expected=" + std::to_string(ops.size()) +
                 " cycle_dim=" + std::to_string(found.cycle_dim) +
                 " trivial_dim=" + std::to_string(found.trivial_dim);
        for (const auto& d : found.basis) e.data.push_back(d.body.to_string(table));
        e.timing_ms = timer.ms();
        entries.push_back(std::move(e));
    }

    // (e) regularity probes per stage
    {
        int jet = options.probe_jet_bound.value_or(n >= 4 ? 1 : 2);
        for (int k = 0; k <= complex.max_stage(); ++k) {
            Timer timer;
            ProbeReport probe = regularity_probe(complex, k, jet, options.probe_degree_bound,
                                                 options.probe_trials, options.seed + k);
            CheckEntry e;
            e.name = "regularity_probe/stage" + std::to_string(k);
            e.status = probe.all_pass() ? CheckStatus::pass : CheckStatus::inconclusive;
            e.note = "boundary_trials=" + std::to_string(probe.boundary_pass) + "/" +
                     std::to_string(probe.boundary_trials) +
                     " kernel=" + std::to_string(probe.kernel_pass) + "/" +
                     std::to_string(probe.kernel_dim);
            e.timing_ms = timer.ms();
            entries.push_back(std::move(e));
        }
    }

    // (f) top-sector triviality: no bounded cycle linear in the top
    // antifield besides zero.
    {
        Timer timer;
        const GradedPoly& delta_top = complex.stage(n - 2).front().expression;
        AnsatzSpec coeff_spec;
        coeff_spec.jet_bound = options.top_jet_bound;
        coeff_spec.degree_bound = options.top_degree_bound;
        coeff_spec.ant = 0;
        coeff_spec.fields = complex.base_fields();
        MonomialIndex coeffs(enumerate_monomials(table, coeff_spec));
        auto jets = multi_indices_up_to(n, options.top_jet_bound);

        MonomialIndex rows;
        std::vector<SparseVec> columns;
        for (const auto& jet : jets)
            for (int u = 0; u < coeffs.size(); ++u) {
                GradedPoly image = mul(GradedPoly::monomial(Rat(1), coeffs.at(u)),
                                       total_derivative_multi(delta_top, jet));
                columns.push_back(rows.pack_interning(image));
            }
        auto kernel = nullspace(columns, static_cast<int>(columns.size()));
        CheckEntry e;
        e.name = "top_sector_triviality";
        e.status = kernel.empty() ? CheckStatus::pass : CheckStatus::inconclusive;
        e.note = "coefficient_kernel_dim=" + std::to_string(kernel.size());
        e.timing_ms = timer.ms();
        entries.push_back(std::move(e));
    }

    return entries;
}

} // namespace kt
