#pragma once

// Exact rational arithmetic for pairing values and Hodge bidegrees.

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace deldyn {

using Rat = boost::rational<long long>;

// Renders in lowest terms: "2", "-1/3", "0".
inline std::string to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "p" or "p/q" with optional sign; rejects q == 0 and junk.
inline std::optional<Rat> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto parse_int = [](const std::string& t, long long& out) -> bool {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        long long v = 0;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') return false;
            v = v * 10 + (t[i] - '0');
        }
        out = (t[0] == '-') ? -v : v;
        return true;
    };
    auto slash = s.find('/');
    long long num = 0, den = 1;
    if (slash == std::string::npos) {
        if (!parse_int(s, num)) return std::nullopt;
    } else {
        if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
        if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
        if (den == 0) return std::nullopt;
    }
    return Rat(num, den);
}

inline bool is_integral(const Rat& r) { return r.denominator() == 1; }

}  // namespace deldyn
