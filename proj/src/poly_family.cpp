#include "bubblekit/poly_family.hpp"

#include <algorithm>

#include "bubblekit/errors.hpp"
#include "expression_parser.hpp"

namespace bubblekit {

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    if (a.t_exponent != b.t_exponent) return a.t_exponent < b.t_exponent;
    const std::size_t n = std::max(a.degrees.size(), b.degrees.size());
    for (std::size_t k = 0; k < n; ++k) {
        const unsigned da = k < a.degrees.size() ? a.degrees[k] : 0;
        const unsigned db = k < b.degrees.size() ? b.degrees[k] : 0;
        if (da != db) return da > db;
    }
    return false;
}

PolyFamily::PolyFamily(std::vector<std::string> variables) : variables_(std::move(variables)) {}

PolyFamily::PolyFamily(std::vector<std::string> variables, Terms terms) : variables_(std::move(variables)) {
    for (auto& [m, c] : terms) {
        if (m.degrees.size() != variables_.size())
            throw InvalidArgument("monomial arity does not match the variable list");
        add_term(m, c);
    }
}

PolyFamily PolyFamily::constant(std::vector<std::string> variables, GaussRat value) {
    PolyFamily p(std::move(variables));
    p.add_term(Monomial{Rat(0), std::vector<unsigned>(p.variables_.size(), 0)}, value);
    return p;
}

PolyFamily PolyFamily::variable(std::vector<std::string> variables, std::size_t index) {
    PolyFamily p(std::move(variables));
    std::vector<unsigned> d(p.variables_.size(), 0);
    d.at(index) = 1;
    p.add_term(Monomial{Rat(0), std::move(d)}, GaussRat(1));
    return p;
}

PolyFamily PolyFamily::t_power(std::vector<std::string> variables, Rat exponent) {
    PolyFamily p(std::move(variables));
    p.add_term(Monomial{std::move(exponent), std::vector<unsigned>(p.variables_.size(), 0)}, GaussRat(1));
    return p;
}

PolyFamily PolyFamily::parse(std::string_view text, std::vector<std::string> variables) {
    return detail::parse_expression(text, &variables, false).value;
}

PolyFamily PolyFamily::parse(std::string_view text) { return detail::parse_expression(text, nullptr, false).value; }

GaussRat PolyFamily::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussRat() : it->second;
}

void PolyFamily::add_term(const Monomial& m, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rat PolyFamily::min_t_exponent() const {
    if (terms_.empty()) throw InvalidArgument("zero polynomial has no minimal t-exponent");
    return terms_.begin()->first.t_exponent;
}

PolyFamily PolyFamily::t_coefficient(const Rat& e) const {
    PolyFamily out(variables_);
    for (const auto& [m, c] : terms_)
        if (m.t_exponent == e) out.add_term(Monomial{Rat(0), m.degrees}, c);
    return out;
}

PolyFamily PolyFamily::shift_t(const Rat& e) const {
    PolyFamily out(variables_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(Monomial{m.t_exponent + e, m.degrees}, c);
    return out;
}

PolyFamily PolyFamily::with_variables(const std::vector<std::string>& variables) const {
    std::vector<std::size_t> target(variables_.size());
    for (std::size_t k = 0; k < variables_.size(); ++k) {
        auto it = std::find(variables.begin(), variables.end(), variables_[k]);
        if (it == variables.end()) {
            bool used = std::any_of(terms_.begin(), terms_.end(),
                                    [k](const auto& term) { return term.first.degrees[k] != 0; });
            if (used) throw InvalidArgument("variable '" + variables_[k] + "' missing from target list");
            target[k] = variables.size();
        } else {
            target[k] = static_cast<std::size_t>(it - variables.begin());
        }
    }
    PolyFamily out(variables);
    for (const auto& [m, c] : terms_) {
        std::vector<unsigned> d(variables.size(), 0);
        for (std::size_t k = 0; k < variables_.size(); ++k)
            if (target[k] < variables.size()) d[target[k]] = m.degrees[k];
        out.add_term(Monomial{m.t_exponent, std::move(d)}, c);
    }
    return out;
}

PolyFamily PolyFamily::normalized() const {
    if (terms_.empty()) return *this;
    return (GaussRat(1) / terms_.begin()->second) * *this;
}

namespace {

// Brings two families onto a common variable list when one list extends the other.
std::pair<PolyFamily, PolyFamily> align(const PolyFamily& a, const PolyFamily& b) {
    if (a.variables() == b.variables()) return {a, b};
    const auto& va = a.variables();
    const auto& vb = b.variables();
    const auto& longer = va.size() >= vb.size() ? va : vb;
    const auto& shorter = va.size() >= vb.size() ? vb : va;
    if (!std::equal(shorter.begin(), shorter.end(), longer.begin()))
        throw InvalidArgument("polynomials over incompatible variable lists");
    return {a.with_variables(longer), b.with_variables(longer)};
}

}  // namespace

PolyFamily PolyFamily::operator-() const { return GaussRat(-1) * *this; }

PolyFamily operator+(const PolyFamily& a, const PolyFamily& b) {
    auto [x, y] = align(a, b);
    for (const auto& [m, c] : y.terms_) x.add_term(m, c);
    return x;
}

PolyFamily operator-(const PolyFamily& a, const PolyFamily& b) { return a + (-b); }

PolyFamily operator*(const PolyFamily& a, const PolyFamily& b) {
    auto [x, y] = align(a, b);
    PolyFamily out(x.variables_);
    for (const auto& [ma, ca] : x.terms_) {
        for (const auto& [mb, cb] : y.terms_) {
            Monomial m{ma.t_exponent + mb.t_exponent, ma.degrees};
            for (std::size_t k = 0; k < m.degrees.size(); ++k) m.degrees[k] += mb.degrees[k];
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

PolyFamily operator*(const GaussRat& s, const PolyFamily& p) {
    PolyFamily out(p.variables_);
    if (s.is_zero()) return out;
    for (const auto& [m, c] : p.terms_) out.terms_.emplace(m, s * c);
    return out;
}

bool operator==(const PolyFamily& a, const PolyFamily& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
}

PolyFamily PolyFamily::pow(unsigned exponent) const {
    PolyFamily result = constant(variables_, GaussRat(1));
    PolyFamily base = *this;
    while (exponent != 0) {
        if (exponent & 1U) result = result * base;
        exponent >>= 1U;
        if (exponent != 0) base = base * base;
    }
    return result;
}

bool equal_up_to_scalar(const PolyFamily& a, const PolyFamily& b) {
    return a.normalized() == b.normalized();
}

std::string render_t_power(const Rat& e) {
    if (e == Rat(1)) return "t";
    if (e.is_integer() && e.sign() > 0) return "t^" + e.to_string();
    return "t^(" + e.to_string() + ")";
}

std::string PolyFamily::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string monomial;
        auto append = [&monomial](const std::string& factor) {
            if (!monomial.empty()) monomial += "*";
            monomial += factor;
        };
        if (!m.t_exponent.is_zero()) append(render_t_power(m.t_exponent));
        for (std::size_t k = 0; k < variables_.size(); ++k) {
            if (m.degrees[k] == 0) continue;
            append(m.degrees[k] == 1 ? variables_[k] : variables_[k] + "^" + std::to_string(m.degrees[k]));
        }
        GaussRat coef = c;
        bool negative = false;
        if (coef.is_real() && coef.re.sign() < 0) {
            negative = true;
            coef = -coef;
        }
        std::string piece;
        if (monomial.empty()) {
            piece = coef.to_string();
        } else if (coef == GaussRat(1)) {
            piece = monomial;
        } else {
            piece = coef.to_string() + "*" + monomial;
        }
        if (first) {
            out = negative ? "-" + piece : piece;
        } else {
            out += negative ? " - " : " + ";
            out += piece;
        }
        first = false;
    }
    return out;
}

}  // namespace bubblekit
