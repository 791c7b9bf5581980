#include "tvarsl2/rational.hpp"

#include <cctype>

namespace tvarsl2 {

namespace {

bool valid_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Int int_from_string(const std::string& s) {
    if (!valid_integer_token(s)) throw parse_error("bad integer literal: '" + s + "'");
    return Int(s);
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        return Rat(int_from_string(s));
    }
    Int num = int_from_string(s.substr(0, slash));
    Int den = int_from_string(s.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator in '" + s + "'");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace tvarsl2
