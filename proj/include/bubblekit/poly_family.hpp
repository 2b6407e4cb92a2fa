#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bubblekit/rational.hpp"

namespace bubblekit {

/// A monomial  t^e * x_0^{d_0} ... x_{n-1}^{d_{n-1}}  with rational e.
struct Monomial {
    Rat t_exponent;
    std::vector<unsigned> degrees;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical term order: ascending t-exponent, then degree vectors in
/// descending lexicographic order (first variable most significant).
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Polynomial in named variables whose coefficients are polynomials in t with
/// rational exponents, e.g.  w^2 - z^3 - t*z  or  x_1^2 - t^(3/2)*x_0.
class PolyFamily {
public:
    using Terms = std::map<Monomial, GaussRat, MonomialOrder>;

    PolyFamily() = default;
    explicit PolyFamily(std::vector<std::string> variables);
    PolyFamily(std::vector<std::string> variables, Terms terms);

    static PolyFamily constant(std::vector<std::string> variables, GaussRat value);
    static PolyFamily variable(std::vector<std::string> variables, std::size_t index);
    static PolyFamily t_power(std::vector<std::string> variables, Rat exponent);

    /// Parses an expression built from numbers, "i", "t", the given variables,
    /// + - * ^ and parentheses; "/" divides by nonzero constants and "t^(p/q)"
    /// gives rational powers of t. Variables must be declared.
    static PolyFamily parse(std::string_view text, std::vector<std::string> variables);
    /// As above, but variables are taken in order of first appearance.
    static PolyFamily parse(std::string_view text);

    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Coefficient of a monomial; zero when absent.
    GaussRat coefficient(const Monomial& m) const;
    /// Adds c * m, dropping the term if the result is zero.
    void add_term(const Monomial& m, const GaussRat& c);

    Rat min_t_exponent() const;
    /// Terms whose t-exponent equals e, as a family (t-exponent reset to 0).
    PolyFamily t_coefficient(const Rat& e) const;
    /// Multiplies by t^e.
    PolyFamily shift_t(const Rat& e) const;

    /// Same polynomial expressed over a (superset) variable list.
    PolyFamily with_variables(const std::vector<std::string>& variables) const;

    /// Divides by the coefficient of the first term in canonical order.
    PolyFamily normalized() const;

    PolyFamily operator-() const;
    friend PolyFamily operator+(const PolyFamily& a, const PolyFamily& b);
    friend PolyFamily operator-(const PolyFamily& a, const PolyFamily& b);
    friend PolyFamily operator*(const PolyFamily& a, const PolyFamily& b);
    friend PolyFamily operator*(const GaussRat& s, const PolyFamily& p);
    friend bool operator==(const PolyFamily& a, const PolyFamily& b);

    PolyFamily pow(unsigned exponent) const;

    std::string to_string() const;

private:
    std::vector<std::string> variables_;
    Terms terms_;
};

bool equal_up_to_scalar(const PolyFamily& a, const PolyFamily& b);

/// Renders t^e the way the parser reads it back ("t", "t^3", "t^(3/2)").
std::string render_t_power(const Rat& e);

}  // namespace bubblekit
