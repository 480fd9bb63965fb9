#pragma once

// Finite simple Lie types and their basic numerology.

#include <optional>
#include <string>

namespace deldyn {

// One of A, B, C, D, E, F, G with a rank.  Validity per the classification:
// A_n (n>=1), B_n (n>=2), C_n (n>=2), D_n (n>=3), E6/E7/E8, F4, G2.
struct SimpleType {
    char tag = 'A';
    int rank = 1;

    friend bool operator==(const SimpleType& a, const SimpleType& b) {
        return a.tag == b.tag && a.rank == b.rank;
    }
    friend bool operator!=(const SimpleType& a, const SimpleType& b) { return !(a == b); }
    friend bool operator<(const SimpleType& a, const SimpleType& b) {
        if (a.tag != b.tag) return a.tag < b.tag;
        return a.rank < b.rank;
    }
};

inline bool valid_type(const SimpleType& t) {
    switch (t.tag) {
        case 'A': return t.rank >= 1;
        case 'B': return t.rank >= 2;
        case 'C': return t.rank >= 2;
        case 'D': return t.rank >= 3;
        case 'E': return t.rank == 6 || t.rank == 7 || t.rank == 8;
        case 'F': return t.rank == 4;
        case 'G': return t.rank == 2;
        default: return false;
    }
}

inline std::string to_string(const SimpleType& t) {
    return std::string(1, t.tag) + std::to_string(t.rank);
}

inline std::optional<SimpleType> parse_type(const std::string& s) {
    if (s.size() < 2) return std::nullopt;
    char tag = s[0];
    if (tag >= 'a' && tag <= 'g') tag = static_cast<char>(tag - 'a' + 'A');
    int rank = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
        rank = rank * 10 + (s[i] - '0');
    }
    SimpleType t{tag, rank};
    if (!valid_type(t)) return std::nullopt;
    return t;
}

// Dimension of the simple Lie algebra: number of roots plus rank.
inline long long lie_dim(const SimpleType& t) {
    long long n = t.rank;
    switch (t.tag) {
        case 'A': return n * (n + 2);
        case 'B':
        case 'C': return n * (2 * n + 1);
        case 'D': return n * (2 * n - 1);
        case 'E': return t.rank == 6 ? 78 : (t.rank == 7 ? 133 : 248);
        case 'F': return 52;
        case 'G': return 14;
        default: return 0;
    }
}

inline long long root_count(const SimpleType& t) { return lie_dim(t) - t.rank; }

}  // namespace deldyn
