#include "modal/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "modal/errors.hpp"

namespace modal {

const char* field_name(Field f) { return f == Field::real ? "real" : "complex"; }

Field parse_field(const std::string& s) {
    if (s == "real") return Field::real;
    if (s == "complex") return Field::complex;
    throw ParseError("unknown field '" + s + "'");
}

std::string Num<double>::format(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double Num<double>::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) return Num<Rational>::parse(s).get_d();
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ParseError("not a number: '" + s + "'");
    return v;
}

std::string Num<Rational>::format(const Rational& v) { return v.get_str(); }

namespace {

bool all_digits(const std::string& s, size_t from, size_t to) {
    if (from >= to) return false;
    for (size_t i = from; i < to; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Rational parse_integer(const std::string& s) {
    size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (!all_digits(s, start, s.size())) throw ParseError("not an integer: '" + s + "'");
    mpz_class z(s[0] == '+' ? s.substr(1) : s, 10);
    return Rational(z);
}

}  // namespace

Rational Num<Rational>::parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty number");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational p = parse_integer(s.substr(0, slash));
        Rational q = parse_integer(s.substr(slash + 1));
        if (sgn(q) == 0) throw ParseError("zero denominator in '" + s + "'");
        Rational r = p / q;
        r.canonicalize();
        return r;
    }
    // decimal with optional exponent, parsed exactly
    size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos);
    long exp10 = 0;
    if (epos != std::string::npos) {
        std::string es = s.substr(epos + 1);
        size_t st = (!es.empty() && (es[0] == '-' || es[0] == '+')) ? 1 : 0;
        if (!all_digits(es, st, es.size())) throw ParseError("bad exponent in '" + s + "'");
        exp10 = std::strtol(es.c_str(), nullptr, 10);
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant = mant.substr(1);
    }
    auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<long>(mant.size() - dot - 1);
    }
    if (!all_digits(digits, 0, digits.size())) throw ParseError("not a number: '" + s + "'");
    Rational r{mpz_class(digits, 10)};
    mpz_class ten = 1;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0)
        r *= ten;
    else
        r /= ten;
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

}  // namespace modal
