#include "rm2kit/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace rm2 {

namespace {

Int parse_int(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') ++i;
    if (i == s.size()) throw std::invalid_argument("bad integer literal");
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw std::invalid_argument("bad integer literal: " + std::string(s));
    std::string tmp(s[0] == '+' ? s.substr(1) : s);
    return Int(tmp, 10);
}

Rat parse_decimal(std::string_view s) {
    std::size_t epos = s.find_first_of("eE");
    long exponent = 0;
    if (epos != std::string_view::npos) {
        exponent = std::stol(std::string(s.substr(epos + 1)));
        s = s.substr(0, epos);
    }
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    std::size_t dot = s.find('.');
    std::string digits;
    if (dot == std::string_view::npos) {
        digits = std::string(s);
    } else {
        digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
        exponent -= static_cast<long>(s.size() - dot - 1);
    }
    if (digits.empty()) throw std::invalid_argument("bad decimal literal");
    Rat q(parse_int(digits));
    Int ten = 10;
    Int scale;
    mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0)
        q *= scale;
    else
        q /= scale;
    q.canonicalize();
    return neg ? Rat(-q) : q;
}

}  // namespace

Rat parse_rat(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t slash = text.find('/');
    if (slash != std::string_view::npos) {
        Int num = parse_int(text.substr(0, slash));
        Int den = parse_int(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rat q(num, den);
        q.canonicalize();
        return q;
    }
    if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
    return Rat(parse_int(text));
}

std::string to_string(const Rat& q) { return q.get_str(); }

Int exact_isqrt(const Int& n) {
    if (n < 0) return -1;
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r * r == n ? r : Int(-1);
}

bool rational_sqrt(const Rat& q, Rat& root) {
    if (q < 0) return false;
    Int a = exact_isqrt(q.get_num());
    Int b = exact_isqrt(q.get_den());
    if (a < 0 || b < 0) return false;
    root = Rat(a, b);
    root.canonicalize();
    return true;
}

}  // namespace rm2
