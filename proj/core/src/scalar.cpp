#include "mixdisc/scalar.hpp"

#include <cctype>

namespace mixdisc {

namespace {

// [+-]?digits, returns false on anything else (no spaces, no decimals)
bool scan_integer(const std::string& s, std::size_t begin, std::size_t end) {
    std::size_t i = begin;
    if (i < end && (s[i] == '+' || s[i] == '-')) ++i;
    if (i == end) return false;
    for (; i < end; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// GMP rejects an explicit leading '+', so strip it after validation.
mpz_class to_mpz(const std::string& s, std::size_t begin, std::size_t end) {
    if (s[begin] == '+') ++begin;
    return mpz_class(s.substr(begin, end - begin));
}

}  // namespace

bool Rational::parse(const std::string& text, Rational& out) {
    const std::size_t slash = text.find('/');
    if (slash == std::string::npos) {
        if (!scan_integer(text, 0, text.size())) return false;
        out = Rational(mpq_class(to_mpz(text, 0, text.size())));
        return true;
    }
    if (text.find('/', slash + 1) != std::string::npos) return false;
    if (!scan_integer(text, 0, slash) || !scan_integer(text, slash + 1, text.size())) return false;
    mpz_class den = to_mpz(text, slash + 1, text.size());
    if (den == 0) return false;
    out = Rational(mpq_class(to_mpz(text, 0, slash), den));
    return true;
}

}  // namespace mixdisc
