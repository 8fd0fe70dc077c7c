#include "mixnewton/expr_parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <vector>

namespace mixnewton {

ParseError::ParseError(std::size_t off, std::string msg, std::string exp)
    : std::runtime_error("parse error at offset " + std::to_string(off) + ": " + msg +
                         (exp.empty() ? "" : " (expected " + exp + ")")),
      offset(off),
      message(std::move(msg)),
      expected(std::move(exp)) {}

namespace {

enum class Tok { Number, ImagNumber, ImagUnit, Var, ConjVar, Conj, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t offset;
    double value = 0.0;  // Number / ImagNumber
    int index = 0;       // Var / ConjVar
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            if (pos_ >= s_.size()) {
                out.push_back({Tok::End, pos_});
                return out;
            }
            const std::size_t at = pos_;
            const char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                out.push_back(lex_number(at));
            } else if (c == 'i' && !is_ident_char(peek(1))) {
                ++pos_;
                out.push_back({Tok::ImagUnit, at});
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                out.push_back(lex_word(at));
            } else {
                ++pos_;
                switch (c) {
                    case '+': out.push_back({Tok::Plus, at}); break;
                    case '-': out.push_back({Tok::Minus, at}); break;
                    case '*': out.push_back({Tok::Star, at}); break;
                    case '^': out.push_back({Tok::Caret, at}); break;
                    case '(': out.push_back({Tok::LParen, at}); break;
                    case ')': out.push_back({Tok::RParen, at}); break;
                    default:
                        throw ParseError(at, std::string("unexpected character '") + c + "'",
                                         "number, variable, operator or parenthesis");
                }
            }
        }
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
    }
    static bool is_ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }
    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    Token lex_number(std::size_t at) {
        std::size_t end = pos_;
        while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
        if (end < s_.size() && s_[end] == '.') {
            ++end;
            while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
        }
        if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < s_.size() && (s_[e] == '+' || s_[e] == '-')) ++e;
            if (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) {
                while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) ++e;
                end = e;
            }
        }
        double value = 0.0;
        auto res = std::from_chars(s_.data() + at, s_.data() + end, value);
        if (res.ec != std::errc() || res.ptr != s_.data() + end)
            throw ParseError(at, "malformed number literal", "decimal number");
        pos_ = end;
        if (pos_ < s_.size() && s_[pos_] == 'i' && !is_ident_char(peek(1))) {
            ++pos_;
            return {Tok::ImagNumber, at, value};
        }
        return {Tok::Number, at, value};
    }

    Token lex_word(std::size_t at) {
        std::size_t end = pos_;
        while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
        const std::string word = s_.substr(pos_, end - pos_);
        if (word == "conj") {
            pos_ = end;
            return {Tok::Conj, at};
        }
        if (word == "z" || word == "zb") {
            std::size_t d = end;
            while (d < s_.size() && std::isdigit(static_cast<unsigned char>(s_[d]))) ++d;
            if (d == end)
                throw ParseError(at, "variable name needs an index", word + "<index>, e.g. " + word + "1");
            int index = 0;
            auto res = std::from_chars(s_.data() + end, s_.data() + d, index);
            if (res.ec != std::errc())
                throw ParseError(end, "variable index out of range", "a small positive integer");
            if (index < 1)
                throw ParseError(end, "variable indices start at 1", "z1, z2, ...");
            pos_ = d;
            return {word == "z" ? Tok::Var : Tok::ConjVar, at, 0.0, index};
        }
        throw ParseError(at, "unknown name '" + word + "'", "z<k>, zb<k>, conj or i");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(std::vector<Token> toks, int n) : toks_(std::move(toks)), n_(n) {}

    MixedPolynomial run() {
        MixedPolynomial f = parse_expr();
        if (cur().kind != Tok::End)
            throw ParseError(cur().offset, "trailing input after expression", "'+', '-', '*', '^' or end of input");
        return f;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    void advance() { ++pos_; }

    MixedPolynomial parse_expr() {
        MixedPolynomial acc = parse_term();
        while (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
            const bool plus = cur().kind == Tok::Plus;
            advance();
            MixedPolynomial rhs = parse_term();
            if (plus)
                acc += rhs;
            else
                acc -= rhs;
        }
        return acc;
    }

    MixedPolynomial parse_term() {
        MixedPolynomial acc = parse_factor();
        while (cur().kind == Tok::Star) {
            advance();
            acc = acc * parse_factor();
        }
        return acc;
    }

    MixedPolynomial parse_factor() {
        if (cur().kind == Tok::Minus) {
            advance();
            return parse_factor() * Complex(-1.0, 0.0);
        }
        MixedPolynomial base = parse_atom();
        if (cur().kind == Tok::Caret) {
            const std::size_t caret_at = cur().offset;
            advance();
            if (cur().kind == Tok::Minus)
                throw ParseError(cur().offset, "negative exponent", "a non-negative integer");
            if (cur().kind != Tok::Number)
                throw ParseError(cur().offset, "exponent must be a non-negative integer literal",
                                 "a non-negative integer");
            const double v = cur().value;
            const int k = static_cast<int>(v);
            if (v != static_cast<double>(k) || k < 0 || k > 512)
                throw ParseError(cur().offset, "exponent must be an integer in [0, 512]",
                                 "a non-negative integer");
            advance();
            (void)caret_at;
            return base.pow(k);
        }
        return base;
    }

    MixedPolynomial parse_atom() {
        const Token t = cur();
        switch (t.kind) {
            case Tok::Number:
                advance();
                return MixedPolynomial::constant(n_, Complex(t.value, 0.0));
            case Tok::ImagNumber:
                advance();
                return MixedPolynomial::constant(n_, Complex(0.0, t.value));
            case Tok::ImagUnit:
                advance();
                return MixedPolynomial::constant(n_, Complex(0.0, 1.0));
            case Tok::Var:
                advance();
                return MixedPolynomial::variable(n_, t.index);
            case Tok::ConjVar:
                advance();
                return MixedPolynomial::conj_variable(n_, t.index);
            case Tok::Conj: {
                advance();
                expect(Tok::LParen, "'(' after conj");
                MixedPolynomial inner = parse_expr();
                expect(Tok::RParen, "')'");
                return conjugate(inner);
            }
            case Tok::LParen: {
                advance();
                MixedPolynomial inner = parse_expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            default:
                throw ParseError(t.offset, "expected a value",
                                 "number, i, z<k>, zb<k>, conj(...) or (...)");
        }
    }

    void expect(Tok kind, const std::string& what) {
        if (cur().kind != kind) throw ParseError(cur().offset, "unexpected token", what);
        advance();
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int n_;
};

std::string shortest_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Renders a monomial; empty string for the constant monomial.
std::string monomial_text(const TermKey& key) {
    std::string out;
    auto piece = [&out](const char* stem, int index, int e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += stem + std::to_string(index);
        if (e != 1) out += "^" + std::to_string(e);
    };
    for (std::size_t i = 0; i < key.nu.size(); ++i) piece("z", static_cast<int>(i) + 1, key.nu[i]);
    for (std::size_t i = 0; i < key.mu.size(); ++i) piece("zb", static_cast<int>(i) + 1, key.mu[i]);
    return out;
}

} // namespace

MixedPolynomial parse(const SourceExpr& src) {
    if (src.text.empty()) throw ParseError(0, "empty expression", "an expression");
    if (src.declared_n && *src.declared_n < 1)
        throw ParseError(0, "declared dimension must be positive", "n >= 1");

    std::vector<Token> toks = Lexer(src.text).run();

    int max_index = 0;
    for (const Token& t : toks)
        if (t.kind == Tok::Var || t.kind == Tok::ConjVar) max_index = std::max(max_index, t.index);
    int n = std::max(max_index, 1);
    if (src.declared_n) {
        if (max_index > *src.declared_n) {
            for (const Token& t : toks)
                if ((t.kind == Tok::Var || t.kind == Tok::ConjVar) && t.index > *src.declared_n)
                    throw ParseError(t.offset,
                                     "variable index " + std::to_string(t.index) +
                                         " exceeds declared dimension " + std::to_string(*src.declared_n),
                                     "an index <= n");
        }
        n = *src.declared_n;
    }
    return Parser(std::move(toks), n).run();
}

MixedPolynomial parse(const std::string& text) { return parse(SourceExpr{text, std::nullopt}); }

std::string format(const MixedPolynomial& f) {
    if (f.is_zero()) return "0";

    std::vector<const std::pair<const TermKey, Complex>*> order;
    order.reserve(f.terms().size());
    for (const auto& kv : f.terms()) order.push_back(&kv);
    auto grade = [](const TermKey& k) {
        return std::accumulate(k.nu.begin(), k.nu.end(), 0) +
               std::accumulate(k.mu.begin(), k.mu.end(), 0);
    };
    std::sort(order.begin(), order.end(), [&](const auto* a, const auto* b) {
        const int ga = grade(a->first), gb = grade(b->first);
        if (ga != gb) return ga < gb;
        return a->first < b->first;
    });

    std::string out;
    for (const auto* kv : order) {
        const std::string mono = monomial_text(kv->first);
        const Complex c = kv->second;
        std::string body;
        bool negative = false;
        if (c.imag() == 0.0) {
            double r = c.real();
            negative = std::signbit(r) && r != 0.0;
            double mag = negative ? -r : r;
            if (mono.empty())
                body = shortest_double(mag);
            else if (mag == 1.0)
                body = mono;
            else
                body = shortest_double(mag) + "*" + mono;
        } else if (c.real() == 0.0) {
            double im = c.imag();
            negative = std::signbit(im);
            double mag = negative ? -im : im;
            std::string coef = mag == 1.0 ? "i" : shortest_double(mag) + "i";
            body = mono.empty() ? coef : coef + "*" + mono;
        } else {
            std::string re = shortest_double(c.real());
            double im = c.imag();
            std::string imtext = std::abs(im) == 1.0 ? "i" : shortest_double(std::abs(im)) + "i";
            std::string coef = "(" + re + (std::signbit(im) ? "-" : "+") + imtext + ")";
            body = mono.empty() ? coef : coef + "*" + mono;
        }
        if (out.empty())
            out = negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
    }
    return out;
}

} // namespace mixnewton
