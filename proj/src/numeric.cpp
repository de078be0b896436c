#include "qhtk/numeric.hpp"

#include "qhtk/errors.hpp"

#include <cctype>

namespace qhtk {

Int div_round(const Int& a, const Int& b) {
    if (b == 0) throw internal_error("div_round: division by zero");
    Int q = a / b;  // truncated
    Int r = a - q * b;
    if (2 * abs_int(r) > abs_int(b)) {
        q += (r > 0) == (b > 0) ? 1 : -1;
    }
    return q;
}

std::string to_string(const Int& a) { return a.str(); }

std::string to_string(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

Rat parse_rat(const std::string& text) {
    auto check_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) return false;
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (!check_int(text)) throw invalid_input("not an integer: '" + text + "'");
            return Rat(Int(text));
        }
        std::string n = text.substr(0, slash);
        std::string d = text.substr(slash + 1);
        if (!check_int(n) || !check_int(d)) throw invalid_input("not a rational: '" + text + "'");
        Int dd(d);
        if (dd == 0) throw invalid_input("zero denominator in '" + text + "'");
        return Rat(Int(n), dd);
    } catch (const std::exception& e) {
        throw invalid_input(std::string("cannot parse rational '") + text + "': " + e.what());
    }
}

bool is_perfect_square(const Rat& value, Rat* root) {
    if (value < 0) return false;
    Int n = num(value), d = den(value);
    Int rn = boost::multiprecision::sqrt(n);
    Int rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return false;
    if (root) *root = Rat(rn, rd);
    return true;
}

}  // namespace qhtk
