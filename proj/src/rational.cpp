#include "cvd/rational.hpp"

#include <cctype>

namespace cvd {

namespace {

bool valid_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty numeric token");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (!valid_integer_token(num) || !valid_integer_token(den))
            throw ParseError("bad fraction '" + text + "'");
        Rational r(text);
        if (r.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
        r.canonicalize();
        return r;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        if (!valid_integer_token(text)) throw ParseError("bad number '" + text + "'");
        return Rational(text);
    }
    std::string head = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool negative = !head.empty() && head[0] == '-';
    if (head == "-" || head == "+" || head.empty()) head += "0";
    if (!valid_integer_token(head) || frac.empty()) throw ParseError("bad decimal '" + text + "'");
    for (char c : frac)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad decimal '" + text + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer whole(head);
    Integer digits(frac);
    Integer num = whole * scale + (negative ? -digits : digits);
    Rational r(num, scale);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Integer ceil_sqrt(const Rational& value) {
    if (sgn(value) < 0) throw std::invalid_argument("ceil_sqrt of negative value");
    Integer ceil_value = value.get_num() / value.get_den();
    if (ceil_value * value.get_den() != value.get_num()) ceil_value += 1;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), ceil_value.get_mpz_t());
    while (root * root < ceil_value) root += 1;
    return root;
}

}  // namespace cvd
