#pragma once

// Permutations on {0, ..., n-1} and finite permutation groups.
//
// Groups are stored by explicit element lists obtained from breadth-first
// closure over the generators.  All group orders in this library are small
// (a few thousand at most), so no factored representation is needed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace deldyn {

struct Perm {
    std::vector<int> img;  // img[v] = image of v

    Perm() = default;
    explicit Perm(int n) : img(n) { std::iota(img.begin(), img.end(), 0); }
    explicit Perm(std::vector<int> im) : img(std::move(im)) {}

    int degree() const { return static_cast<int>(img.size()); }
    int operator()(int v) const { return img[v]; }
    bool is_identity() const {
        for (int v = 0; v < degree(); ++v)
            if (img[v] != v) return false;
        return true;
    }

    friend bool operator==(const Perm& a, const Perm& b) { return a.img == b.img; }
    friend bool operator!=(const Perm& a, const Perm& b) { return a.img != b.img; }
    friend bool operator<(const Perm& a, const Perm& b) { return a.img < b.img; }
};

// (a * b)(v) = a(b(v))
inline Perm compose(const Perm& a, const Perm& b) {
    Perm c;
    c.img.resize(b.img.size());
    for (int v = 0; v < b.degree(); ++v) c.img[v] = a.img[b.img[v]];
    return c;
}

inline Perm inverse(const Perm& a) {
    Perm c;
    c.img.resize(a.img.size());
    for (int v = 0; v < a.degree(); ++v) c.img[a.img[v]] = v;
    return c;
}

inline int perm_order(const Perm& a) {
    Perm p = a;
    int k = 1;
    while (!p.is_identity()) {
        p = compose(a, p);
        ++k;
    }
    return k;
}

// Cycle notation with 1-based points: "(1 3 2)(4 5)"; identity renders as "()".
inline std::string to_cycle_string(const Perm& p) {
    std::string out;
    std::vector<bool> seen(p.degree(), false);
    for (int v = 0; v < p.degree(); ++v) {
        if (seen[v] || p(v) == v) continue;
        out += "(";
        int w = v;
        bool first = true;
        do {
            seen[w] = true;
            if (!first) out += " ";
            out += std::to_string(w + 1);
            first = false;
            w = p(w);
        } while (w != v);
        out += ")";
    }
    if (out.empty()) out = "()";
    return out;
}

// Parses cycle notation on n points (1-based in the text, 0-based internally).
// Fails on out-of-range points, repeated points, or malformed syntax.
std::optional<Perm> parse_cycles(const std::string& text, int n);

// Finite permutation group given by generators; elements computed eagerly.
struct PermGroup {
    int degree = 0;
    std::vector<Perm> gens;
    std::vector<Perm> elements;  // sorted, closed, contains identity

    static PermGroup generated(int degree, std::vector<Perm> gens);
    static PermGroup trivial(int degree) { return generated(degree, {}); }

    std::size_t order() const { return elements.size(); }
    bool contains(const Perm& p) const {
        return std::binary_search(elements.begin(), elements.end(), p);
    }

    // Orbit of a point, sorted ascending.
    std::vector<int> orbit(int v) const;
    // Orbit partition of {0..degree-1}; each orbit sorted, orbits sorted by minimum.
    std::vector<std::vector<int>> orbits() const;

    // True if the given points form a single orbit.
    bool is_transitive_on(const std::vector<int>& pts) const;
};

// Closure of paired generators; used to decide whether aligned generator
// lists present the same abstract group acting on two node sets.
struct PairedPerm {
    Perm first, second;
    friend bool operator<(const PairedPerm& a, const PairedPerm& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    }
    friend bool operator==(const PairedPerm& a, const PairedPerm& b) {
        return a.first == b.first && a.second == b.second;
    }
};

std::vector<PairedPerm> paired_closure(const std::vector<PairedPerm>& gens, int deg1, int deg2);

// All distinct cyclic subgroups (as sorted element lists, identity included),
// deduplicated as sets, ordered by (order, lexicographic element list).
std::vector<std::vector<Perm>> cyclic_subgroups(const std::vector<Perm>& elements);

// All subgroups of the group presented by `elements`, each as a sorted element
// list, optionally capped by order.  Enumerated by closure-extension.
std::vector<std::vector<Perm>> all_subgroups(const std::vector<Perm>& elements,
                                             std::size_t max_order = 0);

// Conjugacy-class representatives of the subgroups of g with order at most
// max_order (0 = uncapped).  Each class contributes its lexicographically
// smallest member; the result is sorted by (order, element list).  Classes
// are walked by extending representatives only, which is what keeps this
// usable on the wreath-product automorphism groups of multi-component
// diagrams.
std::vector<std::vector<Perm>> subgroup_conjugacy_classes(const PermGroup& g,
                                                          std::size_t max_order = 0);

}  // namespace deldyn
