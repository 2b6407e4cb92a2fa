#include "bubblekit/germ.hpp"

#include <algorithm>

#include "bubblekit/errors.hpp"
#include "bubblekit/poly_family.hpp"
#include "expression_parser.hpp"

namespace bubblekit {

Germ::Germ(Coefficients coefficients, unsigned truncation_order) : truncation_(truncation_order) {
    if (truncation_order == 0) throw InvalidArgument("truncation order must be positive");
    for (auto& [k, c] : coefficients) {
        if (k >= truncation_order)
            throw InvalidArgument("coefficient of t^" + std::to_string(k) + " at or beyond truncation order " +
                                  std::to_string(truncation_order));
        if (!c.is_zero()) coefficients_.emplace(k, std::move(c));
    }
}

Germ Germ::monomial(GaussRat coefficient, unsigned exponent, unsigned truncation_order) {
    return Germ({{exponent, std::move(coefficient)}}, truncation_order);
}

Germ Germ::parse(std::string_view text) {
    const std::vector<std::string> no_variables;
    auto parsed = detail::parse_expression(text, &no_variables, true);
    Coefficients coefficients;
    unsigned max_exponent = 0;
    for (const auto& [m, c] : parsed.value.terms()) {
        const Rat& e = m.t_exponent;
        if (!e.is_integer() || e.sign() < 0 || !e.numerator().fits_uint_p())
            throw ParseError("germ exponents must be non-negative integers, got t^(" + e.to_string() + ")", 0);
        const auto k = static_cast<unsigned>(e.numerator().get_ui());
        max_exponent = std::max(max_exponent, k);
        coefficients.emplace(k, c);
    }
    unsigned truncation = max_exponent + 1;
    if (parsed.big_o) {
        truncation = *parsed.big_o;
        if (!coefficients.empty() && max_exponent >= truncation)
            throw ParseError("term t^" + std::to_string(max_exponent) + " lies beyond O(t^" +
                                 std::to_string(truncation) + ")",
                             text.size());
    }
    return Germ(std::move(coefficients), truncation);
}

GaussRat Germ::coefficient(unsigned k) const {
    if (k >= truncation_)
        throw InvalidArgument("coefficient of t^" + std::to_string(k) + " is not known at truncation order " +
                              std::to_string(truncation_));
    auto it = coefficients_.find(k);
    return it == coefficients_.end() ? GaussRat() : it->second;
}

Germ Germ::truncated(unsigned order) const {
    const unsigned n = std::min(order, truncation_);
    Coefficients kept(coefficients_.begin(), coefficients_.lower_bound(n));
    return Germ(std::move(kept), n);
}

Germ Germ::operator-() const { return GaussRat(-1) * *this; }

Germ operator+(const Germ& a, const Germ& b) {
    const unsigned n = std::min(a.truncation_, b.truncation_);
    Germ out = a.truncated(n);
    for (auto it = b.coefficients_.begin(); it != b.coefficients_.lower_bound(n); ++it) {
        auto [pos, inserted] = out.coefficients_.try_emplace(it->first, it->second);
        if (!inserted) {
            pos->second += it->second;
            if (pos->second.is_zero()) out.coefficients_.erase(pos);
        }
    }
    return out;
}

Germ operator-(const Germ& a, const Germ& b) { return a + (-b); }

Germ operator*(const GaussRat& s, const Germ& g) {
    Germ out = Germ::zero(g.truncation_);
    if (s.is_zero()) return out;
    for (const auto& [k, c] : g.coefficients_) out.coefficients_.emplace(k, s * c);
    return out;
}

Germ operator*(const Germ& a, const Germ& b) {
    // (f + O(t^A)) (g + O(t^B)) = fg + O(t^min(A + nu(g), B + nu(f)))
    const unsigned nu_a = ord(a).value_or(a.truncation_);
    const unsigned nu_b = ord(b).value_or(b.truncation_);
    const unsigned n = std::min(a.truncation_ + nu_b, b.truncation_ + nu_a);
    Germ out = Germ::zero(n);
    for (const auto& [ka, ca] : a.coefficients_) {
        for (const auto& [kb, cb] : b.coefficients_) {
            if (ka + kb >= n) break;
            auto [pos, inserted] = out.coefficients_.try_emplace(ka + kb, ca * cb);
            if (!inserted) {
                pos->second += ca * cb;
                if (pos->second.is_zero()) out.coefficients_.erase(pos);
            }
        }
    }
    return out;
}

std::complex<double> Germ::evaluate(std::complex<double> t) const {
    if (coefficients_.empty()) return {0.0, 0.0};
    std::complex<double> acc{0.0, 0.0};
    unsigned power = coefficients_.rbegin()->first;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
        for (; power > it->first; --power) acc *= t;
        acc += it->second.to_complex();
    }
    for (; power > 0; --power) acc *= t;
    return acc;
}

std::string Germ::to_string() const {
    PolyFamily::Terms terms;
    for (const auto& [k, c] : coefficients_) terms.emplace(Monomial{Rat(k), {}}, c);
    std::string out = PolyFamily({}, std::move(terms)).to_string();
    const unsigned implied = coefficients_.empty() ? 1 : coefficients_.rbegin()->first + 1;
    if (truncation_ != implied) out += " + O(" + render_t_power(Rat(truncation_)) + ")";
    return out;
}

Order ord(const Germ& f) {
    if (f.coefficients().empty()) return std::nullopt;
    return f.coefficients().begin()->first;
}

Order agree_order(const Germ& f, const Germ& g) { return ord(f - g); }

}  // namespace bubblekit
