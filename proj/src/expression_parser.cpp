#include "expression_parser.hpp"

#include <algorithm>
#include <cctype>

#include "bubblekit/errors.hpp"

namespace bubblekit::detail {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t pos;
    std::string text;
    GaussRat number;  // for Number (may be imaginary, e.g. "2i", "1/3i")
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < s.size()) {
        const char c = s[k];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++k;
            continue;
        }
        const std::size_t start = k;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
            // "p/q" written without spaces is a single rational literal, so that
            // "1/3i" reads as (1/3)i rather than 1/(3i).
            if (k + 1 < s.size() && s[k] == '/' && std::isdigit(static_cast<unsigned char>(s[k + 1]))) {
                ++k;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
            }
            Rat value;
            try {
                value = Rat::parse(s.substr(start, k - start));
            } catch (const InvalidArgument&) {
                throw ParseError("zero denominator in rational literal", start);
            }
            GaussRat number(value);
            if (k < s.size() && s[k] == 'i' && (k + 1 == s.size() || !ident_char(s[k + 1]))) {
                number = GaussRat(Rat(0), value);
                ++k;
            } else if (k < s.size() && std::isalpha(static_cast<unsigned char>(s[k]))) {
                throw ParseError("expected operator after number", k);
            }
            out.push_back({Tok::Number, start, std::string(s.substr(start, k - start)), number});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (k < s.size() && ident_char(s[k])) ++k;
            out.push_back({Tok::Ident, start, std::string(s.substr(start, k - start)), {}});
            continue;
        }
        Tok kind;
        switch (c) {
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", k);
        }
        out.push_back({kind, start, std::string(1, c), {}});
        ++k;
    }
    out.push_back({Tok::End, s.size(), "", {}});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>* declared, bool allow_big_o)
        : tokens_(lex(text)), allow_big_o_(allow_big_o) {
        if (declared != nullptr) {
            variables_ = *declared;
            fixed_ = true;
        }
        for (const auto& v : variables_) {
            if (v == "t" || v == "i" || v == "O")
                throw InvalidArgument("variable name '" + v + "' is reserved");
        }
    }

    ParsedExpression run() {
        PolyFamily value = expr(true);
        if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        return {value.with_variables(variables_), big_o_};
    }

private:
    const Token& peek() const { return tokens_[at_]; }
    const Token& next() { return tokens_[at_++]; }

    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) throw ParseError(std::string("expected ") + what, peek().pos);
        ++at_;
    }

    bool at_big_o() const {
        return peek().kind == Tok::Ident && peek().text == "O" && tokens_[at_ + 1].kind == Tok::LParen;
    }

    // O ( t ^ INT )
    void big_o_term(bool top_level, bool negated) {
        const std::size_t pos = peek().pos;
        if (!allow_big_o_ || !top_level) throw ParseError("O-term not allowed here", pos);
        if (negated) throw ParseError("O-term must be added, not subtracted", pos);
        if (big_o_) throw ParseError("duplicate O-term", pos);
        next();
        expect(Tok::LParen, "'('");
        if (!(peek().kind == Tok::Ident && peek().text == "t")) throw ParseError("expected 't' in O-term", peek().pos);
        next();
        unsigned n = 1;
        if (peek().kind == Tok::Caret) {
            next();
            const Token& num = peek();
            if (num.kind != Tok::Number || !num.number.is_real() || !num.number.re.is_integer() ||
                num.number.re.sign() <= 0)
                throw ParseError("expected positive integer exponent in O-term", num.pos);
            n = static_cast<unsigned>(num.number.re.numerator().get_ui());
            next();
        }
        expect(Tok::RParen, "')'");
        big_o_ = n;
    }

    PolyFamily zero() const { return PolyFamily(variables_); }

    PolyFamily expr(bool top_level) {
        PolyFamily acc = zero();
        bool negate = false;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) negate = next().kind == Tok::Minus;
        for (;;) {
            if (at_big_o()) {
                big_o_term(top_level, negate);
            } else {
                PolyFamily t = term();
                acc = negate ? acc - t : acc + t;
            }
            if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
                negate = next().kind == Tok::Minus;
                if (big_o_ && top_level && !at_big_o())
                    throw ParseError("O-term must be the last term", peek().pos);
                continue;
            }
            return acc;
        }
    }

    PolyFamily term() {
        PolyFamily acc = factor();
        for (;;) {
            if (peek().kind == Tok::Star) {
                next();
                acc = acc * factor();
            } else if (peek().kind == Tok::Slash) {
                const std::size_t pos = next().pos;
                PolyFamily d = factor();
                acc = acc * invert_constant(d, pos);
            } else {
                return acc;
            }
        }
    }

    PolyFamily invert_constant(const PolyFamily& d, std::size_t pos) const {
        if (d.size() != 1) throw ParseError("division only by nonzero constants", pos);
        const auto& [m, c] = *d.terms().begin();
        const bool constant = m.t_exponent.is_zero() &&
                              std::all_of(m.degrees.begin(), m.degrees.end(), [](unsigned x) { return x == 0; });
        if (!constant) throw ParseError("division only by nonzero constants", pos);
        return PolyFamily::constant(variables_, GaussRat(1) / c);
    }

    PolyFamily factor() {
        if (peek().kind == Tok::Minus) {
            next();
            return -factor();
        }
        if (peek().kind == Tok::Plus) {
            next();
            return factor();
        }
        PolyFamily b = base();
        if (peek().kind != Tok::Caret) return b;
        const std::size_t pos = next().pos;
        const Rat e = exponent();
        if (e.is_integer() && e.sign() >= 0) {
            const mpz_class n = e.numerator();
            if (!n.fits_uint_p()) throw ParseError("exponent too large", pos);
            return b.pow(static_cast<unsigned>(n.get_ui()));
        }
        // Rational or negative powers are allowed only for bare powers of t.
        if (b.size() == 1) {
            const auto& [m, c] = *b.terms().begin();
            const bool pure_t = c == GaussRat(1) &&
                                std::all_of(m.degrees.begin(), m.degrees.end(), [](unsigned x) { return x == 0; });
            if (pure_t) return PolyFamily::t_power(variables_, m.t_exponent * e);
        }
        throw ParseError("non-integer powers are only allowed for t", pos);
    }

    // INT | '-' INT | '(' ['-'] INT ['/' INT] ')'
    Rat exponent() {
        bool paren = false;
        if (peek().kind == Tok::LParen) {
            paren = true;
            next();
        }
        bool neg = false;
        if (peek().kind == Tok::Minus) {
            neg = true;
            next();
        }
        const Token& num = peek();
        if (num.kind != Tok::Number || !num.number.is_real()) throw ParseError("expected exponent", num.pos);
        Rat e = num.number.re;
        next();
        if (!paren && !e.is_integer()) throw ParseError("fractional exponents need parentheses", num.pos);
        if (paren) expect(Tok::RParen, "')'");
        return neg ? -e : e;
    }

    PolyFamily base() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Tok::Number:
                next();
                return PolyFamily::constant(variables_, tok.number);
            case Tok::LParen: {
                next();
                PolyFamily inner = expr(false);
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Ident: {
                next();
                if (tok.text == "t") return PolyFamily::t_power(variables_, Rat(1));
                if (tok.text == "i") return PolyFamily::constant(variables_, GaussRat::i());
                if (tok.text == "O") throw ParseError("O-term not allowed here", tok.pos);
                auto it = std::find(variables_.begin(), variables_.end(), tok.text);
                if (it == variables_.end()) {
                    if (fixed_) throw ParseError("unknown variable '" + tok.text + "'", tok.pos);
                    variables_.push_back(tok.text);
                    it = variables_.end() - 1;
                }
                return PolyFamily::variable(variables_, static_cast<std::size_t>(it - variables_.begin()));
            }
            case Tok::End:
                throw ParseError("unexpected end of input", tok.pos);
            default:
                throw ParseError("unexpected '" + tok.text + "'", tok.pos);
        }
    }

    std::vector<Token> tokens_;
    std::size_t at_ = 0;
    std::vector<std::string> variables_;
    bool fixed_ = false;
    bool allow_big_o_;
    std::optional<unsigned> big_o_;
};

}  // namespace

ParsedExpression parse_expression(std::string_view text, const std::vector<std::string>* declared,
                                  bool allow_big_o) {
    return Parser(text, declared, allow_big_o).run();
}

}  // namespace bubblekit::detail
