#include <doctest.h>

#include "kt/bf.hpp"
#include "test_helpers.hpp"

using namespace kt;

namespace {

GradedPoly jet_poly(const FieldTable& t, const std::string& field, std::vector<int> comp,
                    std::vector<int> jet = {}) {
    int f = t.find(field);
    REQUIRE(f >= 0);
    return GradedPoly::variable(make_jet(t, f, std::move(comp), MultiIndex(std::move(jet))));
}

int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - i + 1) / i;
    return static_cast<int>(r);
}

} // namespace

TEST_CASE("levi_civita") {
    CHECK(levi_civita({1, 2}) == 1);
    CHECK(levi_civita({2, 1}) == -1);
    CHECK(levi_civita({1, 1}) == 0);
    CHECK(levi_civita({3, 1, 2}) == 1);
    CHECK(levi_civita({2, 1, 3}) == -1);
    CHECK(levi_civita({1, 2, 3, 4}) == 1);
}

TEST_CASE("BF n=2 Euler-Lagrange components match the closed form") {
    BFModel model = build_bf(2);
    const FieldTable& t = model.complex.table();

    GradedPoly e_a = model.complex.el().at({model.field_a, {}});
    CHECK(e_a == jet_poly(t, "B", {2}, {1}) - jet_poly(t, "B", {1}, {2}));

    CHECK(model.complex.el().at({model.field_b, {1}}) == jet_poly(t, "A", {}, {2}));
    CHECK(model.complex.el().at({model.field_b, {2}}) == -jet_poly(t, "A", {}, {1}));

    CHECK(e_a.to_string(t) == "-1*B[1]_(2) + 1*B[2]_(1)");
}

TEST_CASE("BF n=3 Euler-Lagrange components match the closed form") {
    BFModel model = build_bf(3);
    const FieldTable& t = model.complex.table();
    // E^{nu...} = -eps^{mu nu...} d_mu A with mu the complementary index
    CHECK(model.complex.el().at({model.field_b, {1, 2}}) == -jet_poly(t, "A", {}, {3}));
    CHECK(model.complex.el().at({model.field_b, {1, 3}}) == jet_poly(t, "A", {}, {2}));
    CHECK(model.complex.el().at({model.field_b, {2, 3}}) == -jet_poly(t, "A", {}, {1}));
    // E for the scalar: full signed sum of first derivatives of B
    GradedPoly expect = jet_poly(t, "B", {2, 3}, {1}) - jet_poly(t, "B", {1, 3}, {2}) +
                        jet_poly(t, "B", {1, 2}, {3});
    CHECK(model.complex.el().at({model.field_a, {}}) == expect);
}

TEST_CASE("BF antifield structure and parity alternation") {
    for (int n = 2; n <= 4; ++n) {
        CAPTURE(n);
        BFModel model = build_bf(n);
        const FieldTable& t = model.complex.table();

        int abar = model.complex.antifield_of(model.field_a);
        int bbar = model.complex.antifield_of(model.field_b);
        CHECK(t.field(abar).parity == Parity::odd);
        CHECK(t.field(bbar).parity == Parity::odd);
        CHECK(t.field(abar).antifield_number == 1);
        CHECK(t.components(bbar).size() == static_cast<size_t>(n));

        CHECK(model.complex.stage_count() == n - 1);
        for (int k = 0; k <= n - 2; ++k) {
            // operator count = C(n, n-k-2); antifield parity alternates
            CHECK(model.complex.stage(k).size() ==
                  static_cast<size_t>(binomial(n, n - k - 2)));
            int af = t.find("D" + std::to_string(k) + "bar");
            REQUIRE(af >= 0);
            CHECK(t.field(af).antifield_number == k + 2);
            CHECK(t.field(af).parity == (k % 2 == 0 ? Parity::even : Parity::odd));
            CHECK(t.components(af).size() == static_cast<size_t>(binomial(n, n - k - 2)));
        }
        // top antifield is a scalar
        int top = t.find("D" + std::to_string(n - 2) + "bar");
        CHECK(t.components(top).size() == 1);
    }
}

TEST_CASE("BF n=3 stage operators have the contracted-derivative form") {
    BFModel model = build_bf(3);
    const FieldTable& t = model.complex.table();

    auto op = [&](int stage, std::vector<int> comp) -> const StageOperator& {
        for (const auto& o : model.complex.stage(stage))
            if (o.component == comp) return o;
        FAIL("operator not found");
        return model.complex.stage(stage).front();
    };

    CHECK(op(0, {1}).expression ==
          -jet_poly(t, "Bbar", {1, 2}, {2}) - jet_poly(t, "Bbar", {1, 3}, {3}));
    CHECK(op(0, {2}).expression ==
          jet_poly(t, "Bbar", {1, 2}, {1}) - jet_poly(t, "Bbar", {2, 3}, {3}));
    CHECK(op(0, {3}).expression ==
          jet_poly(t, "Bbar", {1, 3}, {1}) + jet_poly(t, "Bbar", {2, 3}, {2}));
    CHECK(op(1, {}).expression == jet_poly(t, "D0bar", {1}, {1}) +
                                      jet_poly(t, "D0bar", {2}, {2}) +
                                      jet_poly(t, "D0bar", {3}, {3}));
}

TEST_CASE("the BF bar differential passes the nilpotency criterion") {
    for (int n = 2; n <= 3; ++n) {
        CAPTURE(n);
        BFModel model = build_bf(n);
        CHECK(is_nilpotent(model.complex.differential(-1)));
        CHECK(is_nilpotent(model.complex.kt_differential()));
    }
}

TEST_CASE("BF towers pass nilpotency for n=2..4") {
    for (int n = 2; n <= 4; ++n) {
        CAPTURE(n);
        BFModel model = build_bf(n);
        for (const auto& entry : check_nilpotency(model.complex)) {
            CAPTURE(entry.generator);
            CHECK(entry.pass);
        }
    }
}

TEST_CASE("flipping one stage-0 operator breaks the next registration") {
    BFModel model = build_bf(3);
    // rebuild by hand with a corrupted stage-0 operator
    FieldTable t(3);
    FieldSpec a;
    a.name = "A";
    t.add_field(a);
    FieldSpec b;
    b.name = "B";
    b.index_groups.push_back({2, Symmetry::antisym});
    t.add_field(b);
    KTComplex complex = extend_with_antifields(t, model.complex.lagrangian());

    std::vector<StageOperator> stage0 = model.complex.stage(0);
    stage0[0].expression = -stage0[0].expression; // sign flip
    complex = register_stage(complex, 0, stage0); // still closes: d E is zero
    std::vector<StageOperator> stage1 = model.complex.stage(1);
    CHECK_THROWS_AS(complex = register_stage(complex, 1, stage1), registration_error);
    try {
        (void)register_stage(complex, 1, model.complex.stage(1));
    } catch (const registration_error& err) {
        CHECK(!err.residual().is_zero());
        CHECK(err.op_name() == "D1");
    }
}

TEST_CASE("BF scalar sector admits no Noether identities") {
    for (int n = 2; n <= 3; ++n) {
        CAPTURE(n);
        BFModel model = build_bf(n);
        NoetherBasis basis = noether_search(model.complex, 2, 1, {model.field_a});
        CHECK(basis.basis.empty());
        // whatever cycles exist in the sector are boundary-form
        CHECK(basis.cycle_dim == basis.trivial_dim);
    }
}

TEST_CASE("BF n=2 noether search recovers the divergence identity") {
    BFModel model = build_bf(2);
    NoetherBasis basis = noether_search(model.complex, 1, 0);
    REQUIRE(basis.basis.size() == 1);
    const FieldTable& t = model.complex.table();
    GradedPoly expected = jet_poly(t, "Bbar", {1}, {1}) + jet_poly(t, "Bbar", {2}, {2});
    CHECK(basis.basis[0].body == expected);
    CHECK(basis.trivial_dim == 0);
}

TEST_CASE("BF stage operators generate the first homology of the bar differential") {
    BFModel model = build_bf(2);
    Density delta{model.complex.stage(0).front().expression};
    CHECK(is_cycle(model.complex, delta));

    // before stage registration the operator is not a boundary at
    // generous bounds: a non-trivial Noether identity
    FieldTable t(2);
    FieldSpec a;
    a.name = "A";
    t.add_field(a);
    FieldSpec b;
    b.name = "B";
    b.index_groups.push_back({1, Symmetry::antisym});
    t.add_field(b);
    KTComplex unstaged = extend_with_antifields(t, model.complex.lagrangian());
    CHECK(!is_boundary(unstaged, delta, 2, 3).has_value());

    // after registration the new antifield trivializes it (one-exactness)
    auto witness = is_boundary(model.complex, delta, 1, 2);
    REQUIRE(witness.has_value());
    CHECK(prolong_apply_right(model.complex.kt_differential(), witness->body) == delta.body);
}

TEST_CASE("BF on-shell vanishing of bar-delta images") {
    Rng rng(97);
    for (int n = 2; n <= 3; ++n) {
        CAPTURE(n);
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
            REQUIRE(image.has_ant(0));
            // constant field configuration: all jets of order >= 1 vanish
            std::map<ComponentKey, Rat> values;
            auto assignment = [&](const JetVariable& v) -> Rat {
                if (v.jet.order() > 0) return Rat(0);
                auto [it, inserted] =
                    values.emplace(ComponentKey{v.field, v.component}, Rat(0));
                if (inserted) it->second = random_rational(rng, 5, 3);
                return it->second;
            };
            std::vector<Rat> coords;
            for (int i = 0; i < n; ++i) coords.push_back(random_rational(rng, 5, 3));
            CHECK(image.evaluate(assignment, coords) == Rat(0));
        }
    }
}

TEST_CASE("verify_bf n=2 and n=3 pass every check") {
    for (int n = 2; n <= 3; ++n) {
        CAPTURE(n);
        BFModel model = build_bf(n);
        BFVerifyOptions options;
        options.probe_trials = 3;
        auto entries = verify_bf(model, options);
        CHECK(entries.size() > 4);
        for (const auto& e : entries) {
            CAPTURE(e.name);
            CAPTURE(e.note);
            CHECK(e.status == CheckStatus::pass);
        }
    }
}

TEST_CASE("build_bf validates the dimension range") {
    CHECK_THROWS_AS((void)build_bf(1), std::invalid_argument);
    CHECK_THROWS_AS((void)build_bf(kBFMaxDim + 1), std::invalid_argument);
}
