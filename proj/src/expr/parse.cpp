#include "tricomi/parse.hpp"

#include <cctype>

namespace tricomi::sym {

SyntaxError::SyntaxError(std::size_t position, std::string expected)
    : std::runtime_error("syntax error at position " + std::to_string(position) + ": expected " + expected),
      position_(position),
      expected_(std::move(expected)) {}

UnknownIdentifier::UnknownIdentifier(std::size_t position, std::string name)
    : std::runtime_error("unknown identifier '" + name + "' at position " + std::to_string(position) +
                         " (allowed: x, y, sin, cos, exp)"),
      position_(position),
      name_(std::move(name)) {}

namespace {

enum class Tok { Number, Ident, LParen, RParen, Plus, Minus, Star, Caret, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t pos = 0;
    std::string text;
    Rational number;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        Token t;
        t.pos = pos_;
        if (pos_ >= src_.size()) return t;
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return number(t);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
            }
            t.kind = Tok::Ident;
            t.text = std::string(src_.substr(t.pos, pos_ - t.pos));
            return t;
        }
        ++pos_;
        switch (c) {
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '^': t.kind = Tok::Caret; break;
            default: throw SyntaxError(t.pos, "a number, 'x', 'y', a function call, '(' or an operator");
        }
        return t;
    }

private:
    std::string digits() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    Token number(Token t) {
        const std::string whole = digits();
        t.kind = Tok::Number;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            const std::string frac = digits();
            if (frac.empty()) throw SyntaxError(pos_, "digits after the decimal point");
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
            t.number = Rational(mpz_class(whole + frac, 10), den);
        } else if (pos_ < src_.size() && src_[pos_] == '/') {
            ++pos_;
            const std::size_t den_pos = pos_;
            const std::string den = digits();
            if (den.empty()) throw SyntaxError(den_pos, "an integer denominator");
            if (mpz_class(den, 10) == 0) throw SyntaxError(den_pos, "a nonzero denominator");
            t.number = Rational(mpz_class(whole, 10), mpz_class(den, 10));
        } else {
            t.number = Rational(mpz_class(whole, 10));
        }
        t.number.canonicalize();
        t.text = std::string(src_.substr(t.pos, pos_ - t.pos));
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    Expr parse_all() {
        Expr e = expr();
        if (cur_.kind != Tok::End) throw SyntaxError(cur_.pos, "an operator or end of input");
        return e;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    void expect(Tok kind, const char* what) {
        if (cur_.kind != kind) throw SyntaxError(cur_.pos, what);
        advance();
    }

    Expr expr() {
        std::vector<Expr> terms{term()};
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const bool minus = cur_.kind == Tok::Minus;
            advance();
            Expr t = term();
            terms.push_back(minus ? -t : t);
        }
        return Expr::sum(std::move(terms));
    }

    Expr term() {
        std::vector<Expr> factors{factor()};
        while (cur_.kind == Tok::Star) {
            advance();
            factors.push_back(factor());
        }
        return Expr::product(std::move(factors));
    }

    Expr factor() {
        if (cur_.kind == Tok::Minus) {
            advance();
            return -factor();
        }
        Expr base = atom();
        if (cur_.kind != Tok::Caret) return base;
        advance();
        bool negative = false;
        if (cur_.kind == Tok::Minus) {
            negative = true;
            advance();
        }
        if (cur_.kind != Tok::Number || cur_.number.get_den() != 1 || cur_.text.find('.') != std::string::npos) {
            throw SyntaxError(cur_.pos, "an integer exponent");
        }
        const mpz_class n = cur_.number.get_num();
        if (!n.fits_slong_p()) throw SyntaxError(cur_.pos, "an exponent that fits in a machine integer");
        const long k = n.get_si();
        advance();
        return Expr::power(std::move(base), negative ? -k : k);
    }

    Expr atom() {
        switch (cur_.kind) {
            case Tok::Number: {
                Expr c = Expr::constant(cur_.number);
                advance();
                return c;
            }
            case Tok::LParen: {
                advance();
                Expr inner = expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Ident:
                return identifier();
            default:
                throw SyntaxError(cur_.pos, "a number, 'x', 'y', a function call or '('");
        }
    }

    Expr identifier() {
        const Token id = cur_;
        advance();
        if (id.text == "x") return Expr::x();
        if (id.text == "y") return Expr::y();
        if (id.text != "sin" && id.text != "cos" && id.text != "exp") throw UnknownIdentifier(id.pos, id.text);
        expect(Tok::LParen, "'(' after function name");
        Expr a = expr();
        expect(Tok::RParen, "')'");
        if (id.text == "sin") return Expr::sin(std::move(a));
        if (id.text == "cos") return Expr::cos(std::move(a));
        return Expr::exp(std::move(a));
    }

    Lexer lexer_;
    Token cur_;
};

}  // namespace

Expr parse(std::string_view text) { return simplify(Parser(text).parse_all()); }

Rational parse_rational(std::string_view text) {
    const Expr e = parse(text);
    if (!e.is_constant()) throw SyntaxError(0, "a rational number such as 3, -1/2 or 0.25");
    return e.value();
}

}  // namespace tricomi::sym
