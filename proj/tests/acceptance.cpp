// Acceptance suite: every criterion is exact (symbolic zero or exact
// rational equality) and carries a wall-clock budget. One line per
// criterion; non-zero exit iff any criterion fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "kt/bf.hpp"
#include "kt/model.hpp"
#include "test_helpers.hpp"

using namespace kt;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> body;
};

bool proportional(const GradedPoly& a, const GradedPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.terms().size() != b.terms().size()) return false;
    auto ita = a.terms().begin();
    Rat ratio = 0;
    for (auto itb = b.terms().begin(); itb != b.terms().end(); ++ita, ++itb) {
        if (!(ita->first == itb->first)) return false;
        Rat r = ita->second / itb->second;
        if (ratio == 0)
            ratio = r;
        else if (r != ratio)
            return false;
    }
    return true;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(KTCLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// AC1: the BF tower verifies end to end for n = 2, 3, 4, both in-process
// and through the CLI.
bool ac1(std::string& detail) {
    for (int n = 2; n <= 4; ++n) {
        BFModel model = build_bf(n);
        auto entries = verify_bf(model);
        for (const auto& e : entries)
            if (e.status != CheckStatus::pass) {
                detail = "n=" + std::to_string(n) + " " + e.name + " " + status_name(e.status);
                return false;
            }
        auto start = std::chrono::steady_clock::now();
        if (run_cli("bf --dim " + std::to_string(n)) != 0) {
            detail = "bf --dim " + std::to_string(n) + " exited non-zero";
            return false;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        double budget = n <= 3 ? 5.0 : 60.0;
        if (secs > budget) {
            detail = "n=" + std::to_string(n) + " exceeded budget: " + std::to_string(secs) + "s";
            return false;
        }
        detail += "n=" + std::to_string(n) + ":" + std::to_string(entries.size()) + "checks ";
    }
    return true;
}

// AC2: Noether search on BF n=2 at jet order 1, degree 0 recovers exactly
// the divergence of the B antifield, up to rational scale.
bool ac2(std::string& detail) {
    BFModel model = build_bf(2);
    NoetherBasis basis = noether_search(model.complex, 1, 0);
    if (basis.basis.size() != 1) {
        detail = "basis dimension " + std::to_string(basis.basis.size());
        return false;
    }
    const FieldTable& t = model.complex.table();
    int bbar = model.complex.antifield_of(model.field_b);
    GradedPoly expected =
        GradedPoly::variable(make_jet(t, bbar, {1}, MultiIndex::single(1))) +
        GradedPoly::variable(make_jet(t, bbar, {2}, MultiIndex::single(2)));
    if (!proportional(basis.basis[0].body, expected)) {
        detail = "generator " + basis.basis[0].body.to_string(t);
        return false;
    }
    detail = "dim=1 generator=" + basis.basis[0].body.to_string(t);
    return true;
}

// AC3: no Noether identities for the free scalar, nor for the BF scalar
// sector, at jet order <= 2 and degree <= 1.
bool ac3(std::string& detail) {
    FieldTable t = test::free_scalar_table();
    KTComplex scalar = extend_with_antifields(t, test::free_scalar_lagrangian(t));
    NoetherBasis free_basis = noether_search(scalar, 2, 1);
    if (!free_basis.basis.empty()) {
        detail = "free scalar basis " + std::to_string(free_basis.basis.size());
        return false;
    }
    for (int n = 2; n <= 3; ++n) {
        BFModel model = build_bf(n);
        NoetherBasis sector = noether_search(model.complex, 2, 1, {model.field_a});
        if (!sector.basis.empty()) {
            detail = "BF n=" + std::to_string(n) + " scalar sector basis " +
                     std::to_string(sector.basis.size());
            return false;
        }
    }
    detail = "all empty";
    return true;
}

// AC4: the Euler-Lagrange operator annihilates 100 random total
// divergences of jet order <= 2, degree <= 2, mixed parities.
bool ac4(std::string& detail) {
    FieldTable t = test::mixed_table();
    Rng rng(101);
    auto universe = test::mixed_universe(t, 1, 2);
    for (int trial = 0; trial < 100; ++trial) {
        GradedPoly divergence;
        for (int lambda = 1; lambda <= t.dim(); ++lambda)
            divergence += total_derivative(random_poly(rng, universe), lambda);
        for (const auto& [key, e] : euler_lagrange(t, Density{divergence}))
            if (!e.is_zero()) {
                detail = "trial " + std::to_string(trial) + " component " +
                         t.component_name(key.first, key.second);
                return false;
            }
    }
    detail = "100/100 symbolically zero";
    return true;
}

// AC5: algebraic property suite, >= 100 randomized instances each.
bool ac5(std::string& detail) {
    FieldTable t = test::mixed_table();
    Rng rng(103);
    auto universe = test::mixed_universe(t, 1, 2);
    std::vector<JetVariable> vars;
    for (int f = 0; f < t.field_count(); ++f)
        for (const auto& jet : multi_indices_up_to(t.dim(), 1)) vars.push_back(make_jet(t, f, {}, jet));
    std::uniform_int_distribution<size_t> pick(0, vars.size() - 1);

    GeneralizedVectorField u;
    u.parity = Parity::odd;
    u.coefficients[{0, {}}] = GradedPoly::variable(make_jet(t, 1, {}));
    u.coefficients[{1, {}}] =
        mul(GradedPoly::variable(make_jet(t, 0, {})), GradedPoly::variable(make_jet(t, 0, {})));
    validate_parities(t, u);

    for (int i = 0; i < 120; ++i) {
        Parity pa = i % 2 ? Parity::even : Parity::odd;
        Parity pb = (i / 2) % 2 ? Parity::even : Parity::odd;
        GradedPoly p = test::random_homogeneous(rng, universe, pa);
        GradedPoly q = test::random_homogeneous(rng, universe, pb);
        GradedPoly r = random_poly(rng, universe);
        const JetVariable& v = vars[pick(rng)];

        int koszul = (pa == Parity::odd && pb == Parity::odd) ? -1 : 1;
        if (mul(p, q) != Rat(koszul) * mul(q, p)) { detail = "sign law"; return false; }

        GradedPoly odd = test::random_homogeneous(rng, universe, Parity::odd);
        if (!mul(odd, odd).is_zero()) { detail = "odd square"; return false; }

        if (mul(mul(p, q), r) != mul(p, mul(q, r))) { detail = "associativity"; return false; }

        if (total_derivative(total_derivative(r, 1), 2) !=
            total_derivative(total_derivative(r, 2), 1)) {
            detail = "d_1 d_2 symmetry";
            return false;
        }

        int sv = (pa == Parity::odd && v.is_odd()) ? -1 : 1;
        if (left_partial(mul(p, r), v) !=
            mul(left_partial(p, v), r) + Rat(sv) * mul(p, left_partial(r, v))) {
            detail = "left Leibniz";
            return false;
        }
        int svr = (pb == Parity::odd && v.is_odd()) ? -1 : 1;
        if (right_partial(mul(r, q), v) !=
            mul(r, right_partial(q, v)) + Rat(svr) * mul(right_partial(r, v), q)) {
            detail = "right Leibniz";
            return false;
        }

        int sp = pa == Parity::odd ? -1 : 1;
        if (prolong_apply(u, mul(p, r)) !=
            mul(prolong_apply(u, p), r) + Rat(sp) * mul(p, prolong_apply(u, r))) {
            detail = "prolonged Leibniz";
            return false;
        }
        int sq = pb == Parity::odd ? -1 : 1;
        if (prolong_apply_right(u, mul(r, q)) !=
            Rat(sq) * mul(prolong_apply_right(u, r), q) + mul(r, prolong_apply_right(u, q))) {
            detail = "right prolonged Leibniz";
            return false;
        }
    }
    detail = "120 instances per property";
    return true;
}

// AC6: on-shell vanishing: bar-delta images of antifield-number-1
// densities evaluate to exactly zero at constant field configurations.
bool ac6(std::string& detail) {
    Rng rng(107);
    for (int n = 2; n <= 3; ++n) {
        BFModel model = build_bf(n);
        const FieldTable& t = model.complex.table();
        GeneralizedVectorField bar = model.complex.differential(-1);
        AnsatzSpec spec;
        spec.jet_bound = 2;
        spec.degree_bound = 2;
        spec.ant = 1;
        spec.fields = model.complex.fields_up_to_stage(-1);
        auto universe = enumerate_monomials(t, spec);
        for (int trial = 0; trial < 20; ++trial) {
            GradedPoly phi = random_poly(rng, universe);
            GradedPoly image = prolong_apply_right(bar, phi);
            for (int config = 0; config < 20; ++config) {
                std::map<ComponentKey, Rat> values;
                auto assignment = [&](const JetVariable& v) -> Rat {
                    if (v.jet.order() > 0) return Rat(0);
                    auto [it, inserted] = values.emplace(ComponentKey{v.field, v.component}, Rat(0));
                    if (inserted) it->second = random_rational(rng, 7, 4);
                    return it->second;
                };
                std::vector<Rat> coords;
                for (int i = 0; i < n; ++i) coords.push_back(random_rational(rng, 7, 4));
                if (image.evaluate(assignment, coords) != Rat(0)) {
                    detail = "n=" + std::to_string(n) + " trial " + std::to_string(trial);
                    return false;
                }
            }
        }
    }
    detail = "2x20 densities x 20 configurations, all exactly 0";
    return true;
}

// AC7: boundary-search soundness on 50 constructed cycles.
bool ac7(std::string& detail) {
    BFModel model = build_bf(2);
    Rng rng(109);
    GeneralizedVectorField delta = model.complex.kt_differential();
    const FieldTable& t = model.complex.table();
    int found = 0;
    for (int trial = 0; trial < 50; ++trial) {
        int ant = 2 + trial % 2;
        AnsatzSpec spec;
        spec.jet_bound = 1;
        spec.degree_bound = 2;
        spec.ant = ant;
        spec.fields = model.complex.fields_up_to_stage(model.complex.max_stage());
        auto universe = enumerate_monomials(t, spec);
        GradedPoly psi = random_poly(rng, universe, 3);
        GradedPoly phi = prolong_apply_right(delta, psi);
        auto witness = is_boundary(model.complex, Density{phi}, 1, 2);
        if (!witness) {
            detail = "no witness at trial " + std::to_string(trial);
            return false;
        }
        if (prolong_apply_right(delta, witness->body) != phi) {
            detail = "witness does not reproduce the cycle at trial " + std::to_string(trial);
            return false;
        }
        ++found;
    }
    detail = std::to_string(found) + "/50 witnesses verified by re-application";
    return true;
}

// AC8: mutation sensitivity: a sign flip in one stage operator is caught
// by the eager nilpotency check, and `check` exits 1 on the corrupted
// sample model.
bool ac8(std::string& detail) {
    BFModel good = build_bf(3);
    FieldTable t(3);
    FieldSpec a;
    a.name = "A";
    t.add_field(a);
    FieldSpec b;
    b.name = "B";
    b.index_groups.push_back({2, Symmetry::antisym});
    t.add_field(b);
    KTComplex complex = extend_with_antifields(t, good.complex.lagrangian());
    auto stage0 = good.complex.stage(0);
    stage0[0].expression = -stage0[0].expression;
    complex = register_stage(complex, 0, stage0);
    bool threw = false;
    try {
        (void)register_stage(complex, 1, good.complex.stage(1));
    } catch (const registration_error& err) {
        threw = !err.residual().is_zero();
    }
    if (!threw) {
        detail = "registration accepted a corrupted tower";
        return false;
    }
    int code = run_cli("check " + std::string(KT_SOURCE_DIR) + "/samples/bf3_corrupt.kt");
    if (code != 1) {
        detail = "check exit code " + std::to_string(code);
        return false;
    }
    detail = "registration rejected; check exit 1";
    return true;
}

// AC9: regularity probes for BF n=3, stages 0..1, at jet order <= 2.
bool ac9(std::string& detail) {
    BFModel model = build_bf(3);
    for (int k = 0; k <= 1; ++k) {
        ProbeReport report = regularity_probe(model.complex, k, 2, 2, 5, 1 + k);
        if (report.inconclusive != 0) {
            detail = "stage " + std::to_string(k) + ": " + std::to_string(report.inconclusive) +
                     " unresolved cycles";
            return false;
        }
        detail += "stage" + std::to_string(k) + ":" + std::to_string(report.kernel_dim) +
                  "cycles+" + std::to_string(report.boundary_trials) + "trials ";
    }
    return true;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"AC1 BF tower verification n=2,3,4", 70.0, ac1},
        {"AC2 Noether search recovery on BF n=2", 5.0, ac2},
        {"AC3 scalar-sector emptiness", 5.0, ac3},
        {"AC4 variational oracle on 100 divergences", 30.0, ac4},
        {"AC5 algebraic property suite", 30.0, ac5},
        {"AC6 on-shell vanishing", 10.0, ac6},
        {"AC7 boundary-search soundness", 60.0, ac7},
        {"AC8 mutation sensitivity", 10.0, ac8},
        {"AC9 regularity probes BF n=3", 60.0, ac9},
    };

    int failures = 0;
    for (auto& criterion : criteria) {
        std::string detail;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = criterion.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && secs > criterion.budget_seconds) {
            ok = false;
            detail += " [budget " + std::to_string(criterion.budget_seconds) + "s exceeded]";
        }
        std::printf("[%s] %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", criterion.name.c_str(), secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++failures;
    }
    std::printf("acceptance: %zu criteria, %d failed\n", criteria.size(), failures);
    return failures == 0 ? 0 : 1;
}
