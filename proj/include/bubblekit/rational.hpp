#pragma once

#include <compare>
#include <concepts>
#include <type_traits>
#include <cstdint>
#include <complex>
#include <functional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bubblekit {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rat {
public:
    Rat() = default;
    template <std::integral T>
    Rat(T value)  // NOLINT: implicit from integers is intended
        : value_(from_integer(value)) {}
    Rat(long numerator, long denominator);
    explicit Rat(mpq_class value);

    /// Parses "a" or "a/b" (optional sign, arbitrary length digits).
    static Rat parse(std::string_view text);

    const mpq_class& raw() const noexcept { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const noexcept { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const noexcept { return sgn(value_); }
    double to_double() const { return value_.get_d(); }
    std::string to_string() const { return value_.get_str(); }

    Rat operator-() const { return Rat(mpq_class(-value_)); }
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    template <std::integral T>
    static mpq_class from_integer(T value) {
        if constexpr (std::is_signed_v<T>) {
            return mpq_class(static_cast<long>(value));
        } else {
            return mpq_class(static_cast<unsigned long>(value));
        }
    }

    mpq_class value_;
};

Rat abs(const Rat& r);
Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);

/// Exact element of Q(i).
struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() = default;
    GaussRat(Rat real) : re(std::move(real)) {}  // NOLINT
    template <std::integral T>
    GaussRat(T real) : re(real) {}  // NOLINT
    GaussRat(Rat real, Rat imag) : re(std::move(real)), im(std::move(imag)) {}

    static GaussRat i() { return {Rat(0), Rat(1)}; }

    bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
    bool is_real() const noexcept { return im.is_zero(); }
    GaussRat conj() const { return {re, -im}; }
    Rat norm2() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat& operator+=(const GaussRat& o);
    GaussRat& operator-=(const GaussRat& o);
    GaussRat& operator*=(const GaussRat& o);
    GaussRat& operator/=(const GaussRat& o);

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }

    friend bool operator==(const GaussRat&, const GaussRat&) = default;
    /// Lexicographic (re, im); used only for deterministic ordering.
    friend std::strong_ordering operator<=>(const GaussRat& a, const GaussRat& b) {
        if (auto c = a.re <=> b.re; c != 0) return c;
        return a.im <=> b.im;
    }

    /// Canonical text: "3/2" for reals, "(a+bi)" otherwise.
    std::string to_string() const;
};

GaussRat pow(const GaussRat& base, unsigned exponent);

}  // namespace bubblekit

template <>
struct std::hash<bubblekit::Rat> {
    std::size_t operator()(const bubblekit::Rat& r) const noexcept {
        return std::hash<std::string>{}(r.to_string());
    }
};
