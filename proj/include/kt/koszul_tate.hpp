#ifndef KT_KOSZUL_TATE_HPP
#define KT_KOSZUL_TATE_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kt/calculus.hpp"
#include "kt/poly.hpp"

namespace kt {

// One stage generator Delta_{r_k}. Operators of the same family share an
// antifield with one antisymmetric index group; scalar operators form
// one-member families with an empty component tuple.
struct StageOperator {
    std::string family;
    std::vector<int> component;
    GradedPoly expression;

    std::string display_name() const {
        std::string s = family;
        if (!component.empty()) {
            s += '[';
            for (size_t i = 0; i < component.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(component[i]);
            }
            s += ']';
        }
        return s;
    }
};

// Thrown when an eager nilpotency check fails at stage registration.
class registration_error : public std::runtime_error {
  public:
    registration_error(std::string op_name, GradedPoly residual, std::string residual_text)
        : std::runtime_error("nilpotency failure at operator " + op_name + ": residual " +
                             residual_text),
          op_name_(std::move(op_name)), residual_(std::move(residual)),
          residual_text_(std::move(residual_text)) {}

    const std::string& op_name() const { return op_name_; }
    const GradedPoly& residual() const { return residual_; }
    const std::string& residual_text() const { return residual_text_; }

  private:
    std::string op_name_;
    GradedPoly residual_;
    std::string residual_text_;
};

// The antifield tower of one Lagrangian system: fields, Lagrangian,
// Euler-Lagrange components, the generated antifields, and the registered
// stage operators. Values are immutable; registration returns a new value.
class KTComplex {
  public:
    const FieldTable& table() const { return table_; }
    const Density& lagrangian() const { return lagrangian_; }
    const std::map<ComponentKey, GradedPoly>& el() const { return el_; }

    int stage_count() const { return static_cast<int>(stages_.size()); }
    int max_stage() const { return stage_count() - 1; }
    const std::vector<StageOperator>& stage(int k) const { return stages_.at(k); }

    // Field ids of the original (antifield number 0) fields.
    const std::vector<int>& base_fields() const { return base_fields_; }
    // Antifield id shadowing a base field.
    int antifield_of(int field_id) const { return sbar_ids_.at(field_id); }
    // Field ids allowed in P{k}: base fields, the s-bar antifields, and
    // stage antifields of stage <= k. k = -1 keeps just fields and s-bar.
    std::vector<int> fields_up_to_stage(int k) const;

    // The stage operator mapped to a stage-antifield component.
    const StageOperator& operator_for(const ComponentKey& antifield_comp) const;

    // delta_k as a generalized vector field: s^A -> 0, sbar_A -> E_A,
    // cbar_{r_j} -> Delta_{r_j} for j <= up_to_stage. up_to_stage = -1
    // yields the plain Koszul-Tate differential. Applied on the right.
    GeneralizedVectorField differential(int up_to_stage) const;
    GeneralizedVectorField kt_differential() const { return differential(max_stage()); }

    friend KTComplex extend_with_antifields(const FieldTable& fields, const Density& L);
    friend KTComplex register_stage(const KTComplex& base, int k, std::vector<StageOperator> ops);

  private:
    FieldTable table_;
    Density lagrangian_;
    std::map<ComponentKey, GradedPoly> el_;
    std::vector<int> base_fields_;
    std::map<int, int> sbar_ids_;
    std::vector<std::vector<StageOperator>> stages_;
    std::map<ComponentKey, std::pair<int, int>> antifield_ops_; // comp -> (stage, index)
};

// Builds the antifield extension: computes the Euler-Lagrange components
// and adjoins one odd/even-flipped antifield per field component. The
// input table must contain only antifield-number-0 fields and the
// Lagrangian must be even and antifield-free.
KTComplex extend_with_antifields(const FieldTable& fields, const Density& L);

// Registers the stage-k operators (stages 0..k-1 must be present), creates
// their antifields, and eagerly checks nilpotency of delta_k; throws
// registration_error with the offending residual otherwise.
KTComplex register_stage(const KTComplex& base, int k, std::vector<StageOperator> ops);

struct NilpotencyEntry {
    std::string generator;
    bool pass = false;
    GradedPoly residual;
};

// delta(delta(g)) for every antifield generator g; stage-0 entries are the
// Noether identities, stage-k entries the k-stage identities.
std::vector<NilpotencyEntry> check_nilpotency(const KTComplex& complex);

// True iff delta_N(phi) = 0. Throws std::invalid_argument on antifield-
// number-inhomogeneous input.
bool is_cycle(const KTComplex& complex, const Density& phi);

// Bounded witness search for phi = delta_N(psi) with psi of antifield
// number m+1. Requires is_cycle(phi). nullopt = none within bounds.
std::optional<Density> is_boundary(const KTComplex& complex, const Density& phi, int jet_bound,
                                   int degree_bound);

struct NoetherBasis {
    std::vector<Density> basis; // non-trivial one-cycle representatives
    int cycle_dim = 0;          // kernel dimension before the quotient
    int trivial_dim = 0;        // dimension of the trivial subspace met
};

// Solves sum_Lambda Phi^{A,Lambda} d_Lambda E_A = 0 for coefficient
// functions within bounds and quotients by the boundary-form solutions
// with antisymmetric coefficient matrices at the same bounds. The optional
// filter restricts the sbar slots to the listed base fields.
NoetherBasis noether_search(const KTComplex& complex, int jet_bound, int degree_bound,
                            std::vector<int> slot_fields = {});

struct ProbeReport {
    int stage = 0;
    int boundary_trials = 0;      // random delta_k-boundaries tested
    int boundary_pass = 0;
    int kernel_dim = 0;           // bounded delta_k-cycle space dimension
    int kernel_pass = 0;
    int inconclusive = 0;         // cycles with no witness within bounds
    std::vector<GradedPoly> unresolved;
    bool all_pass() const { return inconclusive == 0; }
};

// Desk-scale falsification of the homology regularity condition at stage
// k: random delta_k-boundaries plus a bounded kernel sweep of the antifield
// number k+3 sector of P{k}, each tested for being a delta_{k+1}-boundary
// (delta of the last stage when k is the top stage). Witness searches run
// at the cycle bounds unless overridden; a cycle with no witness within
// bounds counts as inconclusive, never as a disproof.
ProbeReport regularity_probe(const KTComplex& complex, int k, int jet_bound, int degree_bound,
                             int trials, unsigned long long seed, int witness_jet_bound = -1,
                             int witness_degree_bound = -1);

} // namespace kt

#endif
