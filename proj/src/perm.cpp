#include "deldyn/perm.hpp"

#include <cctype>
#include <map>
#include <queue>

namespace deldyn {

std::optional<Perm> parse_cycles(const std::string& text, int n) {
    Perm p(n);
    std::vector<bool> used(n, false);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) return p;  // empty string = identity
    while (i < text.size()) {
        skip_ws();
        if (i == text.size()) break;
        if (text[i] != '(') return std::nullopt;
        ++i;
        std::vector<int> cycle;
        while (true) {
            skip_ws();
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                return std::nullopt;
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                ++i;
            }
            if (v < 1 || v > n || used[v - 1]) return std::nullopt;
            used[v - 1] = true;
            cycle.push_back(v - 1);
            skip_ws();
            if (i < text.size() && text[i] == ',') ++i;  // allow comma separators
        }
        for (std::size_t k = 0; k < cycle.size(); ++k)
            p.img[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
    skip_ws();
    if (i != text.size()) return std::nullopt;
    return p;
}

PermGroup PermGroup::generated(int degree, std::vector<Perm> gens) {
    PermGroup g;
    g.degree = degree;
    g.gens = std::move(gens);
    std::set<Perm> seen;
    seen.insert(Perm(degree));
    std::queue<Perm> todo;
    todo.push(Perm(degree));
    while (!todo.empty()) {
        Perm cur = todo.front();
        todo.pop();
        for (const Perm& s : g.gens) {
            Perm nxt = compose(s, cur);
            if (seen.insert(nxt).second) todo.push(nxt);
        }
    }
    g.elements.assign(seen.begin(), seen.end());
    return g;
}

std::vector<int> PermGroup::orbit(int v) const {
    std::set<int> out;
    for (const Perm& p : elements) out.insert(p(v));
    return {out.begin(), out.end()};
}

std::vector<std::vector<int>> PermGroup::orbits() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(degree, false);
    for (int v = 0; v < degree; ++v) {
        if (seen[v]) continue;
        auto o = orbit(v);
        for (int w : o) seen[w] = true;
        out.push_back(std::move(o));
    }
    return out;
}

bool PermGroup::is_transitive_on(const std::vector<int>& pts) const {
    if (pts.empty()) return true;
    auto o = orbit(pts.front());
    for (int v : pts)
        if (!std::binary_search(o.begin(), o.end(), v)) return false;
    return true;
}

std::vector<PairedPerm> paired_closure(const std::vector<PairedPerm>& gens, int deg1, int deg2) {
    std::set<PairedPerm> seen;
    PairedPerm id{Perm(deg1), Perm(deg2)};
    seen.insert(id);
    std::queue<PairedPerm> todo;
    todo.push(id);
    while (!todo.empty()) {
        PairedPerm cur = todo.front();
        todo.pop();
        for (const PairedPerm& s : gens) {
            PairedPerm nxt{compose(s.first, cur.first), compose(s.second, cur.second)};
            if (seen.insert(nxt).second) todo.push(nxt);
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<std::vector<Perm>> cyclic_subgroups(const std::vector<Perm>& elements) {
    std::set<std::vector<Perm>> dedup;
    for (const Perm& g : elements) {
        std::set<Perm> cyc;
        Perm p = g;
        while (cyc.insert(p).second) p = compose(g, p);
        dedup.insert(std::vector<Perm>(cyc.begin(), cyc.end()));
    }
    std::vector<std::vector<Perm>> out(dedup.begin(), dedup.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<std::vector<Perm>> all_subgroups(const std::vector<Perm>& elements,
                                             std::size_t max_order) {
    // Closure-extension: grow each known subgroup by one outside element.
    std::set<std::vector<Perm>> known;
    if (elements.empty()) return {};
    int deg = elements.front().degree();
    known.insert({Perm(deg)});
    std::queue<std::vector<Perm>> todo;
    todo.push(*known.begin());
    auto close_with = [&](const std::vector<Perm>& sub, const Perm& g) {
        std::set<Perm> s(sub.begin(), sub.end());
        std::queue<Perm> q;
        if (s.insert(g).second) q.push(g);
        while (!q.empty()) {
            Perm cur = q.front();
            q.pop();
            std::vector<Perm> snapshot(s.begin(), s.end());
            for (const Perm& h : snapshot) {
                for (Perm nxt : {compose(cur, h), compose(h, cur)})
                    if (s.insert(nxt).second) q.push(nxt);
            }
        }
        return std::vector<Perm>(s.begin(), s.end());
    };
    while (!todo.empty()) {
        auto sub = todo.front();
        todo.pop();
        for (const Perm& g : elements) {
            if (std::binary_search(sub.begin(), sub.end(), g)) continue;
            auto bigger = close_with(sub, g);
            if (max_order && bigger.size() > max_order) continue;
            if (known.insert(bigger).second) todo.push(bigger);
        }
    }
    std::vector<std::vector<Perm>> out(known.begin(), known.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

namespace {

bool is_prime_power(int k) {
    if (k < 2) return false;
    for (int p = 2; p * p <= k; ++p) {
        if (k % p) continue;
        while (k % p == 0) k /= p;
        return k == 1;
    }
    return true;  // k itself is prime
}

// Closure of sub + g, aborted (empty result) once the size passes cap.
std::vector<Perm> close_capped(const std::vector<Perm>& sub, const Perm& g, std::size_t cap) {
    std::set<Perm> s(sub.begin(), sub.end());
    std::queue<Perm> q;
    if (s.insert(g).second) q.push(g);
    while (!q.empty()) {
        Perm cur = q.front();
        q.pop();
        std::vector<Perm> snapshot(s.begin(), s.end());
        for (const Perm& h : snapshot) {
            for (Perm nxt : {compose(cur, h), compose(h, cur)}) {
                if (s.insert(nxt).second) {
                    if (cap && s.size() > cap) return {};
                    q.push(nxt);
                }
            }
        }
    }
    return {s.begin(), s.end()};
}

}  // namespace

std::vector<std::vector<Perm>> subgroup_conjugacy_classes(const PermGroup& g,
                                                          std::size_t max_order) {
    std::vector<std::vector<Perm>> reps;
    if (g.degree == 0 && g.elements.empty()) return reps;
    std::set<std::vector<Perm>> seen;  // every subgroup found, all conjugates

    auto conjugate = [](const std::vector<Perm>& sub, const Perm& w) {
        Perm winv = inverse(w);
        std::vector<Perm> out;
        out.reserve(sub.size());
        for (const Perm& s : sub) out.push_back(compose(w, compose(s, winv)));
        std::sort(out.begin(), out.end());
        return out;
    };
    auto register_class = [&](const std::vector<Perm>& sub) {
        std::vector<Perm> best = sub;
        for (const Perm& w : g.elements) {
            auto c = conjugate(sub, w);
            if (c < best) best = c;
            seen.insert(std::move(c));
        }
        reps.push_back(best);
        return best;
    };

    std::vector<Perm> trivial{Perm(g.degree)};
    seen.insert(trivial);
    std::queue<std::vector<Perm>> todo;
    todo.push(register_class(trivial));

    // Every subgroup arises from a proper subgroup by adjoining one element
    // of prime-power order, so extending class representatives by such
    // elements reaches every class.
    while (!todo.empty()) {
        auto sub = todo.front();
        todo.pop();
        for (const Perm& x : g.elements) {
            if (!is_prime_power(perm_order(x))) continue;
            if (std::binary_search(sub.begin(), sub.end(), x)) continue;
            auto bigger = close_capped(sub, x, max_order);
            if (bigger.empty()) continue;
            if (seen.count(bigger)) continue;
            todo.push(register_class(bigger));
        }
    }
    std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return reps;
}

}  // namespace deldyn
