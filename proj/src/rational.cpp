#include "leibniz/rational.hpp"

namespace leibniz {

Rat parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw ParseError("bad rational literal: " + s);
    }
    try {
        Rat q(s);
        if (q.get_den() == 0) throw ParseError("zero denominator in: " + s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: " + s);
    }
}

std::string to_string(const Rat& a) {
    Rat c = a;
    c.canonicalize(); // guard against raw two-argument construction
    return c.get_str();
}

} // namespace leibniz
