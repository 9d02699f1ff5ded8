#include "latticeq/core/rational.hpp"

#include <cctype>
#include <cmath>

#include "latticeq/core/errors.hpp"

namespace latticeq {

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) {
        throw PreconditionError("malformed rational '" + std::string(whole) + "'");
    }
    BigInt v = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw PreconditionError("malformed rational '" + std::string(whole) + "'");
        }
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational r;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(s.substr(0, slash), text);
        BigInt den = parse_integer(s.substr(slash + 1), text);
        if (den == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
        r = Rational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) throw PreconditionError("malformed rational '" + std::string(text) + "'");
        BigInt whole = ip.empty() ? BigInt(0) : parse_integer(ip, text);
        BigInt frac = fp.empty() ? BigInt(0) : parse_integer(fp, text);
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fp.size()));
        r = Rational(whole * scale + frac, scale);
    } else {
        r = Rational(parse_integer(s, text));
    }
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
    if (denom(r) == 1) return numer(r).str();
    return numer(r).str() + "/" + denom(r).str();
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    BigInt g = gcd(a, b);
    BigInt l = a / g * b;
    return l < 0 ? BigInt(-l) : l;
}

std::int64_t to_int64(const BigInt& v) {
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) {
        throw PreconditionError("integer " + v.str() + " exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(v);
}

double to_double(const Rational& r) {
    // Scale both sides down so the conversion keeps ~60 significant bits even
    // for numerators and denominators beyond the double range.
    BigInt num = numer(r);
    BigInt den = denom(r);
    bool negative = num < 0;
    if (negative) num = -num;
    if (num == 0) return 0.0;
    long shift_n = static_cast<long>(boost::multiprecision::msb(num)) - 62;
    long shift_d = static_cast<long>(boost::multiprecision::msb(den)) - 62;
    if (shift_n > 0) num >>= shift_n; else shift_n = 0;
    if (shift_d > 0) den >>= shift_d; else shift_d = 0;
    double v = std::ldexp(num.convert_to<double>() / den.convert_to<double>(),
                          static_cast<int>(shift_n - shift_d));
    return negative ? -v : v;
}

}  // namespace latticeq
