#ifndef KT_MODEL_HPP
#define KT_MODEL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kt/koszul_tate.hpp"
#include "kt/report.hpp"

namespace kt {

struct SourceLoc {
    int line = 0;
    int col = 0;
};

struct Diagnostic {
    SourceLoc loc;
    std::string message;
    std::string render() const {
        return std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": " + message;
    }
};

// Expression tree of the model language. Sums and differences are folded
// into `add` with explicit negations, so the evaluator stays tiny.
struct Expr {
    enum class Kind { number, symbol, add, mul, neg, pow, deriv, eps };

    Kind kind = Kind::number;
    SourceLoc loc;
    Rat value;                    // number
    std::string name;             // symbol
    std::vector<int> components;  // symbol [i,j,...]
    std::vector<int> jets;        // symbol _(i,j,...) as written
    std::vector<int> eps_indices; // eps(i,j,...)
    int ivalue = 0;               // pow exponent / deriv direction
    std::vector<Expr> children;
};

struct FieldDecl {
    std::string name;
    Parity parity = Parity::even;
    std::vector<IndexGroup> groups;
    SourceLoc loc;
};

struct OpDecl {
    std::string family;
    std::vector<int> component;
    Expr expr;
    SourceLoc loc;
};

struct StageDecl {
    int stage = 0;
    std::vector<OpDecl> ops;
    SourceLoc loc;
};

struct ModelFile {
    int base_dim = 0;
    std::vector<std::string> coords;
    std::vector<FieldDecl> fields;
    std::optional<Expr> lagrangian;
    SourceLoc lagrangian_loc;
    std::vector<StageDecl> stages;
};

struct ParseResult {
    std::optional<ModelFile> model;
    std::optional<Diagnostic> error;
};

// Total parser: returns either a model or a diagnostic with line/column.
ParseResult parse_model(std::string_view source);

// Canonical text form of a model; parsing it back yields an identical
// structure. Also the model-hash input.
std::string serialize_model(const ModelFile& model);
std::string model_hash(const ModelFile& model);

struct EvalResult {
    GradedPoly poly;
    std::optional<Diagnostic> error;
};

// Evaluates an expression over the declared fields/antifields of a table.
EvalResult eval_expr(const FieldTable& table, const Expr& expr);

struct BuildResult {
    std::optional<KTComplex> complex; // antifields adjoined, no stages
    std::optional<Diagnostic> error;
};

// Declares the fields, evaluates the Lagrangian, and extends with
// antifields. Stage declarations are untouched (see register_model_stages).
BuildResult build_model(const ModelFile& model);

struct StageRegistrationResult {
    KTComplex complex;                // tower as far as registration succeeded
    std::optional<CheckEntry> failure; // eager nilpotency failure, if any
    std::optional<Diagnostic> error;   // expression/shape diagnostics
    bool ok() const { return !failure && !error; }
};

// Evaluates and registers the declared stages in order, stopping at the
// first eager nilpotency failure.
StageRegistrationResult register_model_stages(KTComplex base, const ModelFile& model);

} // namespace kt

#endif
