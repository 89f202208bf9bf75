#include "kt/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace kt {

Parity Monomial::parity() const {
    int odd = 0;
    for (const auto& [v, e] : vars)
        if (v.is_odd()) odd += e;
    return odd % 2 == 0 ? Parity::even : Parity::odd;
}

int Monomial::ant() const {
    int a = 0;
    for (const auto& [v, e] : vars) a += v.ant * e;
    return a;
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& [c, e] : base_powers) d += e;
    for (const auto& [v, e] : vars) d += e;
    return d;
}

int Monomial::jet_order() const {
    int k = 0;
    for (const auto& [v, e] : vars) k = std::max(k, v.jet.order());
    return k;
}

GradedPoly GradedPoly::constant(Rat c) {
    GradedPoly p;
    if (!kt::is_zero(c)) p.terms_.emplace(Monomial{}, std::move(c));
    return p;
}

GradedPoly GradedPoly::variable(const JetVariable& v) {
    Monomial m;
    m.vars.emplace_back(v, 1);
    return monomial(Rat(1), std::move(m));
}

GradedPoly GradedPoly::coordinate(int lambda) {
    if (lambda < 1) throw std::invalid_argument("coordinate index must be >= 1");
    Monomial m;
    m.base_powers.emplace_back(lambda, 1);
    return monomial(Rat(1), std::move(m));
}

GradedPoly GradedPoly::monomial(Rat c, Monomial m) {
    GradedPoly p;
    if (!kt::is_zero(c)) p.terms_.emplace(std::move(m), std::move(c));
    return p;
}

void GradedPoly::add_term(const Monomial& m, const Rat& c) {
    if (kt::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (kt::is_zero(it->second)) terms_.erase(it);
    }
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

GradedPoly& GradedPoly::operator*=(const Rat& c) {
    if (kt::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
}

GradedPoly GradedPoly::operator-() const {
    GradedPoly p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

std::optional<Parity> GradedPoly::parity() const {
    std::optional<Parity> p;
    for (const auto& [m, c] : terms_) {
        Parity mp = m.parity();
        if (!p)
            p = mp;
        else if (*p != mp)
            return std::nullopt;
    }
    return p;
}

bool GradedPoly::parity_homogeneous() const { return terms_.empty() || parity().has_value(); }

bool GradedPoly::has_parity(Parity p) const {
    for (const auto& [m, c] : terms_)
        if (m.parity() != p) return false;
    return true;
}

std::optional<int> GradedPoly::ant() const {
    std::optional<int> a;
    for (const auto& [m, c] : terms_) {
        int ma = m.ant();
        if (!a)
            a = ma;
        else if (*a != ma)
            return std::nullopt;
    }
    return a;
}

bool GradedPoly::ant_homogeneous() const { return terms_.empty() || ant().has_value(); }

bool GradedPoly::has_ant(int a) const {
    for (const auto& [m, c] : terms_)
        if (m.ant() != a) return false;
    return true;
}

int GradedPoly::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

int GradedPoly::jet_order() const {
    int k = 0;
    for (const auto& [m, c] : terms_) k = std::max(k, m.jet_order());
    return k;
}

std::vector<JetVariable> GradedPoly::jet_variables() const {
    std::vector<JetVariable> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.vars) {
            auto it = std::lower_bound(out.begin(), out.end(), v);
            if (it == out.end() || !(*it == v)) out.insert(it, v);
        }
    return out;
}

Rat GradedPoly::evaluate(const std::function<Rat(const JetVariable&)>& values,
                         const std::vector<Rat>& coord_values) const {
    Rat total(0);
    for (const auto& [m, c] : terms_) {
        Rat term = c;
        for (const auto& [coord, exp] : m.base_powers) {
            if (coord - 1 >= static_cast<int>(coord_values.size()))
                throw std::invalid_argument("missing coordinate value");
            for (int i = 0; i < exp; ++i) term *= coord_values[coord - 1];
        }
        for (const auto& [v, exp] : m.vars) {
            if (v.is_odd()) throw std::domain_error("cannot evaluate an odd variable numerically");
            Rat val = values(v);
            for (int i = 0; i < exp; ++i) term *= val;
        }
        total += term;
    }
    return total;
}

std::string GradedPoly::to_string(const FieldTable& table) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = abs(c);
        if (first) {
            if (sgn(c) < 0) s += '-';
            first = false;
        } else {
            s += sgn(c) < 0 ? " - " : " + ";
        }
        s += a.get_str();
        for (const auto& [coord, exp] : m.base_powers) {
            s += '*' + table.coord_name(coord);
            if (exp > 1) s += '^' + std::to_string(exp);
        }
        for (const auto& [v, exp] : m.vars) {
            s += '*' + jet_variable_name(table, v);
            if (exp > 1) s += '^' + std::to_string(exp);
        }
        (void)m;
    }
    return s;
}

GradedPoly normalize_product(const std::vector<Factor>& factors, const Rat& coeff) {
    if (kt::is_zero(coeff)) return {};
    Monomial m;
    std::map<int, int> base;
    // Insertion sort of the jet factors, accumulating the Koszul sign for
    // each transposition of odd neighbours.
    std::vector<JetVariable> ordered;
    int sign = 1;
    for (const auto& f : factors) {
        if (std::holds_alternative<BasePower>(f)) {
            const auto& bp = std::get<BasePower>(f);
            if (bp.exp < 0) throw std::invalid_argument("negative base power");
            if (bp.exp > 0) base[bp.coord] += bp.exp;
            continue;
        }
        const JetVariable& v = std::get<JetVariable>(f);
        size_t pos = ordered.size();
        int odd_crossed = 0;
        while (pos > 0 && v < ordered[pos - 1]) {
            if (ordered[pos - 1].is_odd()) ++odd_crossed;
            --pos;
        }
        if (v.is_odd()) {
            if (odd_crossed % 2) sign = -sign;
            if (pos > 0 && ordered[pos - 1] == v) return {}; // odd square
            if (pos < ordered.size() && ordered[pos] == v) return {};
        }
        ordered.insert(ordered.begin() + pos, v);
    }
    for (const auto& [coord, exp] : base) m.base_powers.emplace_back(coord, exp);
    for (const auto& v : ordered) {
        if (!m.vars.empty() && m.vars.back().first == v)
            ++m.vars.back().second;
        else
            m.vars.emplace_back(v, 1);
    }
    return GradedPoly::monomial(coeff * sign, std::move(m));
}

namespace {

// Product of canonical monomials; returns sign 0 on an odd square.
int merge_monomials(const Monomial& a, const Monomial& b, Monomial& out) {
    out.base_powers.clear();
    out.vars.clear();
    {
        size_t i = 0, j = 0;
        while (i < a.base_powers.size() || j < b.base_powers.size()) {
            if (j == b.base_powers.size() ||
                (i < a.base_powers.size() && a.base_powers[i].first < b.base_powers[j].first)) {
                out.base_powers.push_back(a.base_powers[i++]);
            } else if (i == a.base_powers.size() ||
                       b.base_powers[j].first < a.base_powers[i].first) {
                out.base_powers.push_back(b.base_powers[j++]);
            } else {
                out.base_powers.emplace_back(a.base_powers[i].first,
                                             a.base_powers[i].second + b.base_powers[j].second);
                ++i;
                ++j;
            }
        }
    }
    // Count Koszul inversions: odd factors of b passing odd factors of a.
    int odd_remaining_a = 0;
    for (const auto& [v, e] : a.vars)
        if (v.is_odd()) ++odd_remaining_a;
    int sign = 1;
    size_t i = 0, j = 0;
    while (i < a.vars.size() || j < b.vars.size()) {
        if (j == b.vars.size() ||
            (i < a.vars.size() && a.vars[i].first < b.vars[j].first)) {
            if (a.vars[i].first.is_odd()) --odd_remaining_a;
            out.vars.push_back(a.vars[i++]);
        } else if (i == a.vars.size() || b.vars[j].first < a.vars[i].first) {
            if (b.vars[j].first.is_odd() && odd_remaining_a % 2) sign = -sign;
            out.vars.push_back(b.vars[j++]);
        } else {
            if (a.vars[i].first.is_odd()) return 0; // odd square
            out.vars.emplace_back(a.vars[i].first, a.vars[i].second + b.vars[j].second);
            ++i;
            ++j;
        }
    }
    return sign;
}

} // namespace

GradedPoly mul(const GradedPoly& p, const GradedPoly& q) {
    GradedPoly out;
    Monomial prod;
    for (const auto& [ma, ca] : p.terms())
        for (const auto& [mb, cb] : q.terms()) {
            int sign = merge_monomials(ma, mb, prod);
            if (sign == 0) continue;
            out.add_term(prod, ca * cb * sign);
        }
    return out;
}

GradedPoly left_partial(const GradedPoly& p, const JetVariable& v) {
    GradedPoly out;
    for (const auto& [m, c] : p.terms()) {
        int odd_before = 0;
        for (size_t i = 0; i < m.vars.size(); ++i) {
            const auto& [w, e] = m.vars[i];
            if (w == v) {
                Monomial rest = m;
                Rat coeff = c;
                if (w.is_odd()) {
                    if (odd_before % 2) coeff = -coeff;
                    rest.vars.erase(rest.vars.begin() + i);
                } else {
                    coeff *= e;
                    if (e == 1)
                        rest.vars.erase(rest.vars.begin() + i);
                    else
                        rest.vars[i].second = e - 1;
                }
                out.add_term(rest, coeff);
                break;
            }
            if (w.is_odd()) odd_before += e;
        }
    }
    return out;
}

GradedPoly right_partial(const GradedPoly& p, const JetVariable& v) {
    GradedPoly out;
    for (const auto& [m, c] : p.terms()) {
        for (size_t i = 0; i < m.vars.size(); ++i) {
            const auto& [w, e] = m.vars[i];
            if (!(w == v)) continue;
            Monomial rest = m;
            Rat coeff = c;
            if (w.is_odd()) {
                int odd_after = 0;
                for (size_t j = i + 1; j < m.vars.size(); ++j)
                    if (m.vars[j].first.is_odd()) odd_after += m.vars[j].second;
                if (odd_after % 2) coeff = -coeff;
                rest.vars.erase(rest.vars.begin() + i);
            } else {
                coeff *= e;
                if (e == 1)
                    rest.vars.erase(rest.vars.begin() + i);
                else
                    rest.vars[i].second = e - 1;
            }
            out.add_term(rest, coeff);
            break;
        }
    }
    return out;
}

} // namespace kt
