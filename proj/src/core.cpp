#include "dimers/core.hpp"

#include <cctype>

namespace dimers {

namespace {

bool all_digits(const std::string& s, size_t from = 0) {
    if (from >= s.size()) return false;
    for (size_t i = from; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Rational parse_integer(const std::string& s) {
    size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (!all_digits(s, start)) throw Error("malformed number \"" + s + "\"");
    Rational r(s[0] == '+' ? s.substr(1) : s);
    return r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rational p = parse_integer(s.substr(0, slash));
        Rational q = parse_integer(s.substr(slash + 1));
        if (q == 0) throw Error("zero denominator in \"" + text + "\"");
        return p / q;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        if (frac.empty() || !all_digits(frac)) throw Error("malformed number \"" + text + "\"");
        Rational scale(1);
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Rational f = parse_integer(frac) / scale;
        Rational w = parse_integer(whole);
        return neg ? w - f : w + f;
    }
    return parse_integer(s);
}

std::string to_string(const Rational& q) { return q.str(); }

}  // namespace dimers
