#include "bubblekit/rational.hpp"

#include <cctype>

#include "bubblekit/errors.hpp"

namespace bubblekit {

Rat::Rat(long numerator, long denominator) {
    if (denominator == 0) throw InvalidArgument("rational with zero denominator");
    value_ = mpq_class(mpz_class(numerator), mpz_class(denominator));
    value_.canonicalize();
}

Rat::Rat(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rat Rat::parse(std::string_view text) {
    auto valid_int = [](std::string_view s, bool allow_sign) {
        std::size_t k = 0;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) k = 1;
        if (k == s.size()) return false;
        for (; k < s.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
        return true;
    };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw InvalidArgument("not a rational number: '" + std::string(text) + "'");
    std::string n(num);
    if (!n.empty() && n[0] == '+') n.erase(0, 1);
    mpz_class zn(n, 10);
    mpz_class zd(std::string(den), 10);
    if (zd == 0) throw InvalidArgument("rational with zero denominator: '" + std::string(text) + "'");
    return Rat(mpq_class(zn, zd));
}

Rat& Rat::operator+=(const Rat& o) {
    value_ += o.value_;
    return *this;
}

Rat& Rat::operator-=(const Rat& o) {
    value_ -= o.value_;
    return *this;
}

Rat& Rat::operator*=(const Rat& o) {
    value_ *= o.value_;
    return *this;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw InvalidArgument("division by zero");
    value_ /= o.value_;
    return *this;
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

GaussRat& GaussRat::operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) {
    const Rat n = o.norm2();
    if (n.is_zero()) throw InvalidArgument("division by zero");
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
}

std::string GaussRat::to_string() const {
    if (im.is_zero()) return re.to_string();
    std::string out = "(" + re.to_string();
    out += im.sign() < 0 ? "-" : "+";
    out += abs(im).to_string() + "i)";
    return out;
}

GaussRat pow(const GaussRat& base, unsigned exponent) {
    GaussRat result(1);
    GaussRat b = base;
    while (exponent != 0) {
        if (exponent & 1U) result *= b;
        b *= b;
        exponent >>= 1U;
    }
    return result;
}

}  // namespace bubblekit
