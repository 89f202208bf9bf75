#include "kt/model.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace kt {

namespace {

enum class Tok {
    end, ident, number, semi, comma, lparen, rparen, lbracket, rbracket,
    lbrace, rbrace, plus, minus, star, caret, slash, equals, jet_open
};

struct Token {
    Tok kind = Tok::end;
    std::string text;
    long value = 0;
    SourceLoc loc;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space();
        Token t;
        t.loc = loc();
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                advance();
            t.kind = Tok::number;
            t.text = std::string(src_.substr(start, pos_ - start));
            t.value = std::stol(t.text);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                advance();
            std::string text(src_.substr(start, pos_ - start));
            // split a trailing "_(" into identifier + jet-subscript opener
            if (text.size() > 1 && text.back() == '_' && pos_ < src_.size() && src_[pos_] == '(') {
                text.pop_back();
                pending_jet_open_ = true;
                pending_loc_ = loc();
                pending_loc_.col -= 1;
            }
            t.kind = Tok::ident;
            t.text = std::move(text);
            return t;
        }
        advance();
        switch (c) {
        case ';': t.kind = Tok::semi; return t;
        case ',': t.kind = Tok::comma; return t;
        case '(': t.kind = Tok::lparen; return t;
        case ')': t.kind = Tok::rparen; return t;
        case '[': t.kind = Tok::lbracket; return t;
        case ']': t.kind = Tok::rbracket; return t;
        case '{': t.kind = Tok::lbrace; return t;
        case '}': t.kind = Tok::rbrace; return t;
        case '+': t.kind = Tok::plus; return t;
        case '-': t.kind = Tok::minus; return t;
        case '*': t.kind = Tok::star; return t;
        case '^': t.kind = Tok::caret; return t;
        case '/': t.kind = Tok::slash; return t;
        case '=': t.kind = Tok::equals; return t;
        default:
            t.kind = Tok::end;
            t.text = std::string(1, c);
            t.value = -1; // lexical error marker
            return t;
        }
    }

    bool take_pending_jet_open(Token& out) {
        if (!pending_jet_open_) return false;
        pending_jet_open_ = false;
        // consume the '('
        advance();
        out.kind = Tok::jet_open;
        out.loc = pending_loc_;
        return true;
    }

  private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }
    SourceLoc loc() const { return {line_, col_}; }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    bool pending_jet_open_ = false;
    SourceLoc pending_loc_;
};

const char* const kKeywords[] = {"base_dim", "coords", "field",      "even", "odd", "antisym",
                                 "indices",  "op",     "lagrangian", "stage", "d",  "eps"};

bool is_keyword(const std::string& s) {
    for (const char* k : kKeywords)
        if (s == k) return true;
    return false;
}

class Parser {
  public:
    explicit Parser(std::string_view src) : lexer_(src) { shift(); }

    ParseResult run() {
        ModelFile model;
        bool have_dim = false;
        while (cur_.kind != Tok::end || failed_) {
            if (failed_) return {std::nullopt, diag_};
            if (!expect_ident("statement")) return {std::nullopt, diag_};
            std::string kw = cur_.text;
            SourceLoc loc = cur_.loc;
            if (kw == "base_dim") {
                shift();
                long v = take_number("base dimension");
                if (failed_) return {std::nullopt, diag_};
                if (v < 1) return fail(loc, "base_dim must be >= 1");
                model.base_dim = static_cast<int>(v);
                have_dim = true;
                if (!take(Tok::semi, "';'")) return {std::nullopt, diag_};
            } else if (kw == "coords") {
                shift();
                while (cur_.kind == Tok::ident) {
                    model.coords.push_back(cur_.text);
                    shift();
                }
                if (!take(Tok::semi, "';'")) return {std::nullopt, diag_};
            } else if (kw == "field") {
                shift();
                FieldDecl f;
                f.loc = loc;
                if (!expect_ident("field name")) return {std::nullopt, diag_};
                if (is_keyword(cur_.text)) return fail(cur_.loc, "reserved word used as field name");
                f.name = cur_.text;
                shift();
                if (!expect_ident("parity")) return {std::nullopt, diag_};
                if (cur_.text == "even")
                    f.parity = Parity::even;
                else if (cur_.text == "odd")
                    f.parity = Parity::odd;
                else
                    return fail(cur_.loc, "expected 'even' or 'odd'");
                shift();
                while (cur_.kind == Tok::ident) {
                    IndexGroup g;
                    if (cur_.text == "antisym")
                        g.sym = Symmetry::antisym;
                    else if (cur_.text == "indices")
                        g.sym = Symmetry::none;
                    else
                        return fail(cur_.loc, "expected 'antisym' or 'indices'");
                    shift();
                    if (!take(Tok::lparen, "'('")) return {std::nullopt, diag_};
                    long cnt = take_number("index count");
                    if (failed_) return {std::nullopt, diag_};
                    if (cnt < 1) return fail(loc, "index count must be >= 1");
                    g.count = static_cast<int>(cnt);
                    if (!take(Tok::rparen, "')'")) return {std::nullopt, diag_};
                    f.groups.push_back(g);
                }
                if (!take(Tok::semi, "';'")) return {std::nullopt, diag_};
                model.fields.push_back(std::move(f));
            } else if (kw == "lagrangian") {
                shift();
                model.lagrangian_loc = loc;
                Expr e = parse_expr();
                if (failed_) return {std::nullopt, diag_};
                model.lagrangian = std::move(e);
                if (!take(Tok::semi, "';'")) return {std::nullopt, diag_};
            } else if (kw == "stage") {
                shift();
                StageDecl s;
                s.loc = loc;
                long v = take_number("stage number");
                if (failed_) return {std::nullopt, diag_};
                s.stage = static_cast<int>(v);
                if (!take(Tok::lbrace, "'{'")) return {std::nullopt, diag_};
                while (cur_.kind == Tok::ident && cur_.text == "op") {
                    shift();
                    OpDecl op;
                    op.loc = cur_.loc;
                    if (!expect_ident("operator name")) return {std::nullopt, diag_};
                    if (is_keyword(cur_.text))
                        return fail(cur_.loc, "reserved word used as operator name");
                    op.family = cur_.text;
                    shift();
                    if (cur_.kind == Tok::lbracket) {
                        shift();
                        if (!parse_int_list(op.component, Tok::rbracket))
                            return {std::nullopt, diag_};
                    }
                    if (!take(Tok::equals, "'='")) return {std::nullopt, diag_};
                    op.expr = parse_expr();
                    if (failed_) return {std::nullopt, diag_};
                    if (!take(Tok::semi, "';'")) return {std::nullopt, diag_};
                    s.ops.push_back(std::move(op));
                }
                if (!take(Tok::rbrace, "'}'")) return {std::nullopt, diag_};
                model.stages.push_back(std::move(s));
            } else {
                return fail(loc, "unknown statement '" + kw + "'");
            }
        }
        if (failed_) return {std::nullopt, diag_};
        if (!have_dim) return fail({1, 1}, "missing base_dim");
        if (model.coords.empty())
            for (int i = 1; i <= model.base_dim; ++i)
                model.coords.push_back("x" + std::to_string(i));
        if (static_cast<int>(model.coords.size()) != model.base_dim)
            return fail({1, 1}, "coords count does not match base_dim");
        for (size_t i = 0; i < model.stages.size(); ++i)
            if (model.stages[i].stage != static_cast<int>(i))
                return fail(model.stages[i].loc, "stages must be declared in order starting at 0");
        if (!model.lagrangian) return fail({1, 1}, "missing lagrangian");
        return {std::move(model), std::nullopt};
    }

  private:
    void shift() {
        Token pending;
        if (lexer_.take_pending_jet_open(pending)) {
            cur_ = pending;
            return;
        }
        cur_ = lexer_.next();
        if (cur_.kind == Tok::end && cur_.value == -1 && !failed_)
            fail(cur_.loc, "unexpected character '" + cur_.text + "'");
    }

    ParseResult fail(SourceLoc loc, std::string msg) {
        if (!failed_) {
            failed_ = true;
            diag_ = Diagnostic{loc, std::move(msg)};
        }
        return {std::nullopt, diag_};
    }

    bool expect_ident(const char* what) {
        if (cur_.kind == Tok::ident) return true;
        fail(cur_.loc, std::string("expected ") + what);
        return false;
    }

    bool take(Tok kind, const char* what) {
        if (failed_) return false;
        if (cur_.kind != kind) {
            fail(cur_.loc, std::string("expected ") + what);
            return false;
        }
        shift();
        return true;
    }

    long take_number(const char* what) {
        if (cur_.kind != Tok::number) {
            fail(cur_.loc, std::string("expected ") + what);
            return 0;
        }
        long v = cur_.value;
        shift();
        return v;
    }

    bool parse_int_list(std::vector<int>& out, Tok closer) {
        while (true) {
            if (cur_.kind != Tok::number) {
                fail(cur_.loc, "expected index");
                return false;
            }
            out.push_back(static_cast<int>(cur_.value));
            shift();
            if (cur_.kind == Tok::comma) {
                shift();
                continue;
            }
            break;
        }
        return take(closer, closer == Tok::rbracket ? "']'" : "')'");
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        while (!failed_ && (cur_.kind == Tok::plus || cur_.kind == Tok::minus)) {
            bool neg = cur_.kind == Tok::minus;
            SourceLoc loc = cur_.loc;
            shift();
            Expr rhs = parse_term();
            if (failed_) break;
            if (neg) {
                Expr n;
                n.kind = Expr::Kind::neg;
                n.loc = loc;
                n.children.push_back(std::move(rhs));
                rhs = std::move(n);
            }
            Expr sum;
            sum.kind = Expr::Kind::add;
            sum.loc = loc;
            sum.children.push_back(std::move(lhs));
            sum.children.push_back(std::move(rhs));
            lhs = std::move(sum);
        }
        return lhs;
    }

    Expr parse_term() {
        Expr lhs = parse_factor();
        while (!failed_ && cur_.kind == Tok::star) {
            SourceLoc loc = cur_.loc;
            shift();
            Expr rhs = parse_factor();
            if (failed_) break;
            Expr prod;
            prod.kind = Expr::Kind::mul;
            prod.loc = loc;
            prod.children.push_back(std::move(lhs));
            prod.children.push_back(std::move(rhs));
            lhs = std::move(prod);
        }
        return lhs;
    }

    Expr parse_factor() {
        if (cur_.kind == Tok::minus) {
            Expr e;
            e.kind = Expr::Kind::neg;
            e.loc = cur_.loc;
            shift();
            e.children.push_back(parse_factor());
            return e;
        }
        if (cur_.kind == Tok::plus) {
            shift();
            return parse_factor();
        }
        Expr base = parse_primary();
        if (!failed_ && cur_.kind == Tok::caret) {
            Expr p;
            p.kind = Expr::Kind::pow;
            p.loc = cur_.loc;
            shift();
            long v = take_number("exponent");
            if (v < 0) fail(p.loc, "exponent must be non-negative");
            p.ivalue = static_cast<int>(v);
            p.children.push_back(std::move(base));
            return p;
        }
        return base;
    }

    Expr parse_primary() {
        Expr e;
        e.loc = cur_.loc;
        if (cur_.kind == Tok::number) {
            e.kind = Expr::Kind::number;
            long num = cur_.value;
            shift();
            long den = 1;
            if (cur_.kind == Tok::slash) {
                shift();
                den = take_number("denominator");
                if (!failed_ && den == 0) fail(e.loc, "zero denominator");
            }
            if (!failed_) e.value = make_rat(num, den);
            return e;
        }
        if (cur_.kind == Tok::lparen) {
            shift();
            Expr inner = parse_expr();
            take(Tok::rparen, "')'");
            return inner;
        }
        if (cur_.kind != Tok::ident) {
            fail(cur_.loc, "expected expression");
            return e;
        }
        if (cur_.text == "d") {
            e.kind = Expr::Kind::deriv;
            shift();
            if (!take(Tok::lparen, "'('")) return e;
            if (cur_.kind == Tok::number) {
                e.ivalue = static_cast<int>(cur_.value);
                shift();
            } else if (cur_.kind == Tok::ident) {
                e.name = cur_.text; // coordinate name, resolved at build time
                shift();
            } else {
                fail(cur_.loc, "expected base index");
                return e;
            }
            if (!take(Tok::comma, "','")) return e;
            e.children.push_back(parse_expr());
            take(Tok::rparen, "')'");
            return e;
        }
        if (cur_.text == "eps") {
            e.kind = Expr::Kind::eps;
            shift();
            if (!take(Tok::lparen, "'('")) return e;
            parse_int_list(e.eps_indices, Tok::rparen);
            return e;
        }
        e.kind = Expr::Kind::symbol;
        e.name = cur_.text;
        shift();
        if (cur_.kind == Tok::lbracket) {
            shift();
            if (!parse_int_list(e.components, Tok::rbracket)) return e;
        }
        if (cur_.kind == Tok::jet_open) {
            shift();
            if (!parse_int_list(e.jets, Tok::rparen)) return e;
        }
        return e;
    }

    Lexer lexer_;
    Token cur_;
    bool failed_ = false;
    Diagnostic diag_;
};

} // namespace

ParseResult parse_model(std::string_view source) { return Parser(source).run(); }

namespace {

void serialize_expr(std::ostringstream& out, const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::number: out << e.value.get_str(); break;
    case Expr::Kind::symbol:
        out << e.name;
        if (!e.components.empty()) {
            out << '[';
            for (size_t i = 0; i < e.components.size(); ++i)
                out << (i ? "," : "") << e.components[i];
            out << ']';
        }
        if (!e.jets.empty()) {
            out << "_(";
            for (size_t i = 0; i < e.jets.size(); ++i) out << (i ? "," : "") << e.jets[i];
            out << ')';
        }
        break;
    case Expr::Kind::add:
        out << '(';
        serialize_expr(out, e.children[0]);
        out << " + ";
        serialize_expr(out, e.children[1]);
        out << ')';
        break;
    case Expr::Kind::mul:
        out << '(';
        serialize_expr(out, e.children[0]);
        out << " * ";
        serialize_expr(out, e.children[1]);
        out << ')';
        break;
    case Expr::Kind::neg:
        out << "(-";
        serialize_expr(out, e.children[0]);
        out << ')';
        break;
    case Expr::Kind::pow:
        serialize_expr(out, e.children[0]);
        out << '^' << e.ivalue;
        break;
    case Expr::Kind::deriv:
        out << "d(";
        if (e.name.empty())
            out << e.ivalue;
        else
            out << e.name;
        out << ", ";
        serialize_expr(out, e.children[0]);
        out << ')';
        break;
    case Expr::Kind::eps:
        out << "eps(";
        for (size_t i = 0; i < e.eps_indices.size(); ++i)
            out << (i ? "," : "") << e.eps_indices[i];
        out << ')';
        break;
    }
}

} // namespace

std::string serialize_model(const ModelFile& model) {
    std::ostringstream out;
    out << "base_dim " << model.base_dim << ";\n";
    out << "coords";
    for (const auto& c : model.coords) out << ' ' << c;
    out << ";\n";
    for (const auto& f : model.fields) {
        out << "field " << f.name << ' ' << (f.parity == Parity::even ? "even" : "odd");
        for (const auto& g : f.groups)
            out << ' ' << (g.sym == Symmetry::antisym ? "antisym" : "indices") << '(' << g.count
                << ')';
        out << ";\n";
    }
    if (model.lagrangian) {
        out << "lagrangian ";
        serialize_expr(out, *model.lagrangian);
        out << ";\n";
    }
    for (const auto& s : model.stages) {
        out << "stage " << s.stage << " {\n";
        for (const auto& op : s.ops) {
            out << "  op " << op.family;
            if (!op.component.empty()) {
                out << '[';
                for (size_t i = 0; i < op.component.size(); ++i)
                    out << (i ? "," : "") << op.component[i];
                out << ']';
            }
            out << " = ";
            serialize_expr(out, op.expr);
            out << ";\n";
        }
        out << "}\n";
    }
    return out.str();
}

std::string model_hash(const ModelFile& model) { return fnv1a_hex(serialize_model(model)); }

namespace {

struct Evaluator {
    const FieldTable& table;
    std::optional<Diagnostic> error;

    GradedPoly fail(SourceLoc loc, std::string msg) {
        if (!error) error = Diagnostic{loc, std::move(msg)};
        return {};
    }

    int resolve_coord(const Expr& e) {
        if (e.name.empty()) {
            if (e.ivalue < 1 || e.ivalue > table.dim()) {
                fail(e.loc, "index out of range");
                return 0;
            }
            return e.ivalue;
        }
        for (int i = 1; i <= table.dim(); ++i)
            if (table.coord_name(i) == e.name) return i;
        fail(e.loc, "undeclared identifier '" + e.name + "'");
        return 0;
    }

    GradedPoly eval(const Expr& e) {
        if (error) return {};
        switch (e.kind) {
        case Expr::Kind::number: return GradedPoly::constant(e.value);
        case Expr::Kind::add: return eval(e.children[0]) + eval(e.children[1]);
        case Expr::Kind::neg: return -eval(e.children[0]);
        case Expr::Kind::mul: {
            GradedPoly a = eval(e.children[0]);
            GradedPoly b = eval(e.children[1]);
            return error ? GradedPoly{} : mul(a, b);
        }
        case Expr::Kind::pow: {
            GradedPoly base = eval(e.children[0]);
            if (error) return {};
            GradedPoly acc = GradedPoly::constant(Rat(1));
            for (int i = 0; i < e.ivalue; ++i) acc = mul(acc, base);
            return acc;
        }
        case Expr::Kind::deriv: {
            int lambda = resolve_coord(e);
            if (error) return {};
            GradedPoly inner = eval(e.children[0]);
            if (error) return {};
            return total_derivative(inner, lambda);
        }
        case Expr::Kind::eps: {
            if (static_cast<int>(e.eps_indices.size()) != table.dim())
                return fail(e.loc, "eps arity must equal base_dim");
            for (int idx : e.eps_indices)
                if (idx < 1 || idx > table.dim()) return fail(e.loc, "index out of range");
            int sign = 1;
            const auto& v = e.eps_indices;
            for (size_t i = 0; i < v.size(); ++i)
                for (size_t j = i + 1; j < v.size(); ++j) {
                    if (v[i] == v[j]) return GradedPoly{};
                    if (v[i] > v[j]) sign = -sign;
                }
            return GradedPoly::constant(Rat(sign));
        }
        case Expr::Kind::symbol: {
            for (int i = 1; i <= table.dim(); ++i)
                if (table.coord_name(i) == e.name) {
                    if (!e.components.empty() || !e.jets.empty())
                        return fail(e.loc, "coordinates take no indices");
                    return GradedPoly::coordinate(i);
                }
            int f = table.find(e.name);
            if (f < 0) return fail(e.loc, "undeclared identifier '" + e.name + "'");
            const FieldSpec& spec = table.field(f);
            if (static_cast<int>(e.components.size()) != spec.index_count())
                return fail(e.loc, "arity mismatch for field '" + e.name + "'");
            for (int idx : e.components)
                if (idx < 1 || idx > table.dim()) return fail(e.loc, "index out of range");
            for (int idx : e.jets)
                if (idx < 1 || idx > table.dim()) return fail(e.loc, "index out of range");
            ComponentCanon canon = table.canonicalize_component(f, e.components);
            if (canon.sign == 0) return GradedPoly{};
            JetVariable v = make_jet(table, f, canon.component, MultiIndex(e.jets));
            return Rat(canon.sign) * GradedPoly::variable(v);
        }
        }
        return {};
    }
};

} // namespace

EvalResult eval_expr(const FieldTable& table, const Expr& expr) {
    Evaluator ev{table, std::nullopt};
    GradedPoly p = ev.eval(expr);
    if (ev.error) return {GradedPoly{}, ev.error};
    return {std::move(p), std::nullopt};
}

BuildResult build_model(const ModelFile& model) {
    FieldTable table(model.base_dim, model.coords);
    for (const auto& f : model.fields) {
        FieldSpec spec;
        spec.name = f.name;
        spec.parity = f.parity;
        spec.index_groups = f.groups;
        try {
            table.add_field(std::move(spec));
        } catch (const std::invalid_argument& err) {
            return {std::nullopt, Diagnostic{f.loc, err.what()}};
        }
    }
    EvalResult lag = eval_expr(table, *model.lagrangian);
    if (lag.error) return {std::nullopt, lag.error};
    if (!lag.poly.has_parity(Parity::even))
        return {std::nullopt, Diagnostic{model.lagrangian_loc, "parity mismatch: lagrangian must be even"}};
    try {
        return {extend_with_antifields(table, Density{std::move(lag.poly)}), std::nullopt};
    } catch (const std::invalid_argument& err) {
        return {std::nullopt, Diagnostic{model.lagrangian_loc, err.what()}};
    }
}

StageRegistrationResult register_model_stages(KTComplex base, const ModelFile& model) {
    StageRegistrationResult result{std::move(base), std::nullopt, std::nullopt};
    for (const auto& stage : model.stages) {
        std::vector<StageOperator> ops;
        for (const auto& decl : stage.ops) {
            EvalResult value = eval_expr(result.complex.table(), decl.expr);
            if (value.error) {
                result.error = value.error;
                return result;
            }
            StageOperator op;
            op.family = decl.family;
            op.component = decl.component;
            op.expression = std::move(value.poly);
            ops.push_back(std::move(op));
        }
        try {
            result.complex = register_stage(result.complex, stage.stage, std::move(ops));
        } catch (const registration_error& err) {
            CheckEntry entry;
            entry.name = "nilpotency/" + err.op_name();
            entry.status = CheckStatus::fail;
            entry.residual = err.residual_text();
            entry.note = "stage " + std::to_string(stage.stage) + " registration rejected";
            result.failure = std::move(entry);
            return result;
        } catch (const std::invalid_argument& err) {
            result.error = Diagnostic{stage.loc, err.what()};
            return result;
        }
    }
    return result;
}

} // namespace kt
