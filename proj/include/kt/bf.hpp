#ifndef KT_BF_HPP
#define KT_BF_HPP

#include <optional>

#include "kt/koszul_tate.hpp"
#include "kt/report.hpp"

namespace kt {

// Sign of a base-index word under the Levi-Civita symbol: 0 on repeats,
// otherwise the permutation parity.
int levi_civita(const std::vector<int>& indices);

// Topological BF system in dimension n: an even scalar A, an even
// antisymmetric (n-1)-form B, Lagrangian A * eps^{mu nu...} d_mu B_{nu...}
// over independent strictly increasing components, and the full operator
// tower of stages 0..n-2.
struct BFModel {
    int n = 0;
    int field_a = -1;
    int field_b = -1;
    KTComplex complex;
};

inline constexpr int kBFMaxDim = 6;

// Builds the model and registers every stage; eager nilpotency checks must
// pass (a registration_error here is an implementation bug). 2 <= n <= 6.
BFModel build_bf(int n);

struct BFVerifyOptions {
    int search_jet_bound = 1;    // noether_search bounds for the recovery check
    int search_degree_bound = 0;
    // regularity probe bounds; unset jet order resolves to 2 for n <= 3
    // and 1 for larger n (documented runtime budget)
    std::optional<int> probe_jet_bound;
    int probe_degree_bound = 2;
    int probe_trials = 5;
    int top_jet_bound = 2;       // top-sector triviality search
    int top_degree_bound = 1;
    unsigned long long seed = 1;
};

// End-to-end verification report: the Noether identity, the k-stage
// identities, full nilpotency, Noether-search recovery of the stage-0
// span, regularity probes per stage, and top-sector triviality.
std::vector<CheckEntry> verify_bf(const BFModel& model, const BFVerifyOptions& options = {});

} // namespace kt

#endif
