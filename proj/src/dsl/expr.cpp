#include "latticeq/dsl/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "latticeq/core/errors.hpp"
#include "latticeq/dsl/normal_form.hpp"

namespace latticeq::dsl {

bool Expr::operator==(const Expr& o) const {
    return kind == o.kind && value == o.value && name == o.name && exponent == o.exponent && args == o.args;
}

bool variable_less(const std::string& a, const std::string& b) {
    auto rank = [](const std::string& v) -> std::pair<int, long long> {
        if (v == "k") return {0, 0};
        if (v == "x") return {2, 0};
        return {1, std::stoll(v.substr(1))};
    };
    return rank(a) < rank(b);
}

namespace {

enum class Tok { number, decimal, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : src_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::end, "", line_, col_});
                return out;
            }
            const int l = line_, c = col_;
            const char ch = src_[pos_];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                std::string t;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t += take();
                Tok kind = Tok::number;
                if (pos_ < src_.size() && src_[pos_] == '.') {
                    t += take();
                    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                        throw ParseError("digit expected after '.'", line_, col_);
                    }
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t += take();
                    kind = Tok::decimal;
                }
                out.push_back({kind, t, l, c});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(ch))) {
                std::string t;
                while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) t += take();
                bool known = t == "pi" || t == "i" || t == "n" || t == "k" || t == "x" || t == "exp";
                if (!known && t.size() >= 2 && t[0] == 'p') {
                    known = true;
                    for (std::size_t j = 1; j < t.size(); ++j) known = known && std::isdigit(static_cast<unsigned char>(t[j]));
                    known = known && t[1] != '0';
                }
                if (!known) throw ParseError("unknown identifier '" + t + "'", l, c);
                out.push_back({Tok::ident, t, l, c});
                continue;
            }
            Tok kind;
            switch (ch) {
                case '+': kind = Tok::plus; break;
                case '-': kind = Tok::minus; break;
                case '*': kind = Tok::star; break;
                case '/': kind = Tok::slash; break;
                case '^': kind = Tok::caret; break;
                case '(': kind = Tok::lparen; break;
                case ')': kind = Tok::rparen; break;
                default: {
                    std::string shown = (static_cast<unsigned char>(ch) < 0x80) ? std::string(1, ch) : "non-ASCII byte";
                    throw ParseError("unexpected character '" + shown + "'", l, c);
                }
            }
            take();
            out.push_back({kind, std::string(1, ch), l, c});
        }
    }

private:
    char take() {
        char ch = src_[pos_++];
        if (ch == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) {
            ++col_;
        }
        return ch;
    }
    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) take();
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

Expr node(Expr::Kind k, const Token& at) {
    Expr e;
    e.kind = k;
    e.line = at.line;
    e.col = at.col;
    return e;
}

Expr binary(Expr::Kind k, const Token& at, Expr a, Expr b) {
    Expr e = node(k, at);
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
}

bool has_variable_or_exp(const Expr& e) {
    if (e.kind == Expr::Kind::var || e.kind == Expr::Kind::exp) return true;
    for (const auto& a : e.args)
        if (has_variable_or_exp(a)) return true;
    return false;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Expr run() {
        Expr e = expr();
        if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    static constexpr int max_depth = 500;

    const Token& peek() const { return toks_[pos_]; }
    const Token& peek2() const { return toks_[std::min(pos_ + 1, toks_.size() - 1)]; }
    const Token& next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, peek().line, peek().col); }
    void expect(Tok k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what);
        ++pos_;
    }

    struct Depth {
        explicit Depth(Parser& p) : p_(p) {
            if (++p_.depth_ > max_depth) p_.fail("expression nested too deeply");
        }
        ~Depth() { --p_.depth_; }
        Parser& p_;
    };

    Expr expr() {
        Depth guard(*this);
        Expr lhs = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const Token op = next();
            Expr rhs = term();
            lhs = binary(op.kind == Tok::plus ? Expr::Kind::add : Expr::Kind::sub, op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Expr term() {
        Depth guard(*this);
        Expr lhs = factor();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const Token op = next();
            Expr rhs = factor();
            if (op.kind == Tok::slash) check_divisor(rhs, op);
            lhs = binary(op.kind == Tok::star ? Expr::Kind::mul : Expr::Kind::div, op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    static void check_divisor(const Expr& d, const Token& op) {
        if (has_variable_or_exp(d)) {
            throw ParseError("division only by nonzero literals or symbols (pi, i, n)", op.line, op.col);
        }
        NormalForm nf = normalize(d);
        if (nf.is_zero()) throw ParseError("division by zero", op.line, op.col);
        if (nf.terms.size() != 1) {
            throw ParseError("divisor must be a single literal or symbol product", op.line, op.col);
        }
    }

    Expr factor() {
        Depth guard(*this);
        if (peek().kind == Tok::minus) {
            const Token op = next();
            Expr e = node(Expr::Kind::neg, op);
            e.args.push_back(factor());
            return e;
        }
        Expr base = atom();
        if (peek().kind == Tok::caret) {
            const Token op = next();
            int m = exponent_literal();
            Expr e = node(Expr::Kind::pow, op);
            e.exponent = m;
            e.args.push_back(std::move(base));
            return e;
        }
        return base;
    }

    int exponent_literal() {
        bool paren = false;
        if (peek().kind == Tok::lparen) {
            paren = true;
            ++pos_;
        }
        const Token& t = peek();
        if (t.kind == Tok::minus) fail("exponent must be a non-negative integer");
        if (t.kind != Tok::number) fail("non-integer exponent");
        if (paren && peek2().kind != Tok::rparen) {
            ++pos_;
            fail("non-integer exponent");
        }
        if (t.text.size() > 3 || std::stoi(t.text) > max_exponent) {
            fail("exponent exceeds " + std::to_string(max_exponent));
        }
        int m = std::stoi(t.text);
        ++pos_;
        if (paren) expect(Tok::rparen, "')'");
        return m;
    }

    Expr atom() {
        Depth guard(*this);
        const Token t = peek();
        switch (t.kind) {
            case Tok::number: {
                ++pos_;
                Expr e = node(Expr::Kind::number, t);
                e.value = Rational(BigInt(t.text));
                // int '/' int is one literal unless a power follows it
                if (peek().kind == Tok::slash && peek2().kind == Tok::number &&
                    toks_[std::min(pos_ + 2, toks_.size() - 1)].kind != Tok::caret) {
                    const Token slash = next();
                    const Token den = next();
                    BigInt d(den.text);
                    if (d == 0) throw ParseError("division by zero", slash.line, slash.col);
                    e.value = Rational(BigInt(t.text), d);
                }
                return e;
            }
            case Tok::decimal: {
                ++pos_;
                Expr e = node(Expr::Kind::number, t);
                e.value = parse_rational(t.text);
                return e;
            }
            case Tok::ident: {
                ++pos_;
                if (t.text == "pi") return node(Expr::Kind::pi, t);
                if (t.text == "i") return node(Expr::Kind::imag, t);
                if (t.text == "n") return node(Expr::Kind::n, t);
                if (t.text == "exp") {
                    expect(Tok::lparen, "'(' after exp");
                    Expr e = node(Expr::Kind::exp, t);
                    e.args.push_back(expr());
                    expect(Tok::rparen, "')'");
                    return e;
                }
                Expr e = node(Expr::Kind::var, t);
                e.name = t.text;
                return e;
            }
            case Tok::lparen: {
                ++pos_;
                Expr e = expr();
                expect(Tok::rparen, "')'");
                return e;
            }
            case Tok::end:
                fail("unexpected end of input");
            default:
                fail("unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::add:
        case Expr::Kind::sub: return 1;
        case Expr::Kind::mul:
        case Expr::Kind::div: return 2;
        case Expr::Kind::neg: return 3;
        case Expr::Kind::pow: return 4;
        case Expr::Kind::number: return numer(e.value) < 0 ? 3 : (is_integer(e.value) ? 5 : 2);
        default: return 5;
    }
}

std::string wrap(const Expr& e, int min_prec) {
    std::string s = print_expr(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

Expr parse(std::string_view text) {
    if (text.size() > max_source_bytes) throw ParseError("input exceeds 64 KiB", 1, 1);
    return Parser(Lexer(text).run()).run();
}

std::string print_expr(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::number: {
            if (numer(e.value) < 0) return "-" + print_expr(Expr{Expr::Kind::number, -e.value, "", 0, {}, 1, 1});
            return to_string(e.value);
        }
        case Expr::Kind::pi: return "pi";
        case Expr::Kind::imag: return "i";
        case Expr::Kind::n: return "n";
        case Expr::Kind::var: return e.name;
        case Expr::Kind::neg: return "-" + wrap(e.args[0], 3);
        case Expr::Kind::add: return print_expr(e.args[0]) + " + " + wrap(e.args[1], 2);
        case Expr::Kind::sub: return print_expr(e.args[0]) + " - " + wrap(e.args[1], 2);
        case Expr::Kind::mul: return wrap(e.args[0], 2) + "*" + wrap(e.args[1], 3);
        case Expr::Kind::div: return wrap(e.args[0], 2) + "/" + wrap(e.args[1], 4);
        case Expr::Kind::pow: return wrap(e.args[0], 5) + "^" + std::to_string(e.exponent);
        case Expr::Kind::exp: return "exp(" + print_expr(e.args[0]) + ")";
    }
    return {};
}

namespace {

// Extended precision keeps large polynomial phases (k^4 terms) accurate
// before the final exp.
using LC = std::complex<long double>;

LC eval_long(const Expr& e, const Env& env) {
    const long double pi = std::numbers::pi_v<long double>;
    switch (e.kind) {
        case Expr::Kind::number: return {e.value.convert_to<long double>(), 0.0L};
        case Expr::Kind::pi: return {pi, 0.0L};
        case Expr::Kind::imag: return {0.0L, 1.0L};
        case Expr::Kind::n: return {static_cast<long double>(env.n), 0.0L};
        case Expr::Kind::var: {
            if (e.name == "k") return {static_cast<long double>(env.k), 0.0L};
            if (e.name == "x") {
                if (env.n <= 0) throw PreconditionError("x needs a universe size");
                return {static_cast<long double>(env.k) * std::sqrt(2.0L * pi / static_cast<long double>(env.n)), 0.0L};
            }
            std::size_t idx = std::stoul(e.name.substr(1));
            if (idx == 0 || idx > env.p.size()) throw PreconditionError("no value bound for " + e.name);
            return {static_cast<long double>(env.p[idx - 1]), 0.0L};
        }
        case Expr::Kind::neg: return -eval_long(e.args[0], env);
        case Expr::Kind::add: return eval_long(e.args[0], env) + eval_long(e.args[1], env);
        case Expr::Kind::sub: return eval_long(e.args[0], env) - eval_long(e.args[1], env);
        case Expr::Kind::mul: return eval_long(e.args[0], env) * eval_long(e.args[1], env);
        case Expr::Kind::div: return eval_long(e.args[0], env) / eval_long(e.args[1], env);
        case Expr::Kind::pow: {
            LC b = eval_long(e.args[0], env), r = 1.0L;
            for (int j = 0; j < e.exponent; ++j) r *= b;
            return r;
        }
        case Expr::Kind::exp: return std::exp(eval_long(e.args[0], env));
    }
    return {};
}

}  // namespace

std::complex<double> evaluate(const Expr& e, const Env& env) {
    LC v = eval_long(e, env);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

}  // namespace latticeq::dsl
