#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "bubblekit/rational.hpp"

namespace bubblekit {

/// Order of vanishing. std::nullopt means "infinite": no nonzero coefficient
/// below the truncation order, so the true order is only known to be at least
/// the truncation order.
using Order = std::optional<unsigned>;

/// Truncated power series  sum_k a_k t^k + O(t^N)  with Gaussian-rational
/// coefficients. Only nonzero coefficients with exponent < N are stored.
class Germ {
public:
    using Coefficients = std::map<unsigned, GaussRat>;

    Germ() = default;
    Germ(Coefficients coefficients, unsigned truncation_order);

    static Germ monomial(GaussRat coefficient, unsigned exponent, unsigned truncation_order);
    static Germ zero(unsigned truncation_order) { return Germ({}, truncation_order); }

    /// Parses  term (('+'|'-') term)* ['+' 'O(t^' INT ')'].  Without an
    /// O-term the truncation order is (largest exponent) + 1.
    static Germ parse(std::string_view text);

    const Coefficients& coefficients() const noexcept { return coefficients_; }
    unsigned truncation_order() const noexcept { return truncation_; }
    /// Coefficient of t^k; zero when not stored. k must be below the truncation order.
    GaussRat coefficient(unsigned k) const;
    bool is_zero() const noexcept { return coefficients_.empty(); }

    Germ truncated(unsigned order) const;

    Germ operator-() const;
    friend Germ operator+(const Germ& a, const Germ& b);
    friend Germ operator-(const Germ& a, const Germ& b);
    friend Germ operator*(const GaussRat& s, const Germ& g);
    friend Germ operator*(const Germ& a, const Germ& b);
    friend bool operator==(const Germ&, const Germ&) = default;

    /// Horner evaluation of the stored polynomial in double precision.
    std::complex<double> evaluate(std::complex<double> t) const;

    /// Canonical text: ascending exponents, O-term only when it is not implied.
    std::string to_string() const;

private:
    Coefficients coefficients_;
    unsigned truncation_ = 1;
};

/// Smallest exponent with a nonzero coefficient.
Order ord(const Germ& f);

/// nu(f - g) on the common truncation window min(N_f, N_g). Infinite means
/// "indistinguishable at the current precision", not equality.
Order agree_order(const Germ& f, const Germ& g);

}  // namespace bubblekit
