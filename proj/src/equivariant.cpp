#include "deldyn/equivariant.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace deldyn {

namespace {

bool is_automorphism(const Diagram& d, const Perm& p) {
    if (p.degree() != d.total_nodes) return false;
    for (int i = 0; i < d.total_nodes; ++i)
        for (int j = 0; j < d.total_nodes; ++j)
            if (d.cartan[p(i)][p(j)] != d.cartan[i][j]) return false;
    return true;
}

}  // namespace

std::optional<EquivariantDiagram> make_equivariant(const Diagram& d,
                                                   const std::vector<Perm>& gens) {
    for (const Perm& g : gens)
        if (!is_automorphism(d, g)) return std::nullopt;
    EquivariantDiagram e;
    e.diagram = d;
    e.gens = gens;
    e.group = PermGroup::generated(d.total_nodes, gens);
    return e;
}

Perm component_perm(const Diagram& d, const Perm& p) {
    Perm cp(d.comp_count());
    for (int c = 0; c < d.comp_count(); ++c) cp.img[c] = d.comp_of(p(d.offsets[c]));
    return cp;
}

std::vector<std::vector<int>> orbits(const EquivariantDiagram& e,
                                     const std::vector<int>& subset) {
    std::vector<std::vector<int>> out;
    std::set<int> remaining(subset.begin(), subset.end());
    while (!remaining.empty()) {
        int v = *remaining.begin();
        auto orb = e.group.orbit(v);
        for (int w : orb) remaining.erase(w);
        out.push_back(std::move(orb));
    }
    return out;
}

std::vector<int> closure(const EquivariantDiagram& e, const std::vector<int>& subset) {
    std::set<int> out;
    for (int v : subset)
        for (int w : e.group.orbit(v)) out.insert(w);
    return {out.begin(), out.end()};
}

Pi0 pi0(const EquivariantDiagram& e) {
    std::vector<Perm> comp_gens;
    for (const Perm& g : e.gens) comp_gens.push_back(component_perm(e.diagram, g));
    PermGroup cg = PermGroup::generated(e.comp_count(), comp_gens);
    Pi0 out;
    out.comp_orbits = cg.orbits();
    out.transitive = out.comp_orbits.size() <= 1;
    return out;
}

std::optional<std::vector<int>> degree_over_pi0(const EquivariantDiagram& e,
                                                const std::vector<int>& subset) {
    auto stable = closure(e, subset);
    std::vector<int> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (stable != sorted) return std::nullopt;
    std::vector<int> per_comp(e.comp_count(), 0);
    for (int v : sorted) ++per_comp[e.diagram.comp_of(v)];
    return per_comp;
}

std::optional<EquivariantDiagram> restrict_action(const EquivariantDiagram& e,
                                                  const std::vector<Perm>& h_elements) {
    if (h_elements.empty()) return std::nullopt;
    std::vector<Perm> sorted = h_elements;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (const Perm& p : sorted)
        if (!e.group.contains(p)) return std::nullopt;
    // Subgroup check: closed under composition (finiteness gives inverses).
    PermGroup h = PermGroup::generated(e.diagram.total_nodes,
                                       small_generating_set(sorted, e.diagram.total_nodes));
    if (h.elements != sorted) return std::nullopt;
    EquivariantDiagram out;
    out.diagram = e.diagram;
    out.gens = h.gens;
    out.group = std::move(h);
    return out;
}

bool shared_abstract_group(const EquivariantDiagram& e1, const EquivariantDiagram& e2) {
    if (e1.gens.size() != e2.gens.size()) return false;
    std::vector<PairedPerm> pg;
    for (std::size_t i = 0; i < e1.gens.size(); ++i)
        pg.push_back({e1.gens[i], e2.gens[i]});
    auto closure = paired_closure(pg, e1.diagram.total_nodes, e2.diagram.total_nodes);
    return closure.size() == e1.group.order() && closure.size() == e2.group.order();
}

bool valid_component_map(const EquivariantDiagram& e1, const EquivariantDiagram& e2,
                         const ComponentMap& f) {
    int m = e1.comp_count();
    if (e2.comp_count() != m || static_cast<int>(f.size()) != m) return false;
    std::vector<bool> hit(m, false);
    for (int c = 0; c < m; ++c) {
        if (f[c] < 0 || f[c] >= m || hit[f[c]]) return false;
        hit[f[c]] = true;
    }
    for (std::size_t i = 0; i < e1.gens.size(); ++i) {
        Perm c1 = component_perm(e1.diagram, e1.gens[i]);
        Perm c2 = component_perm(e2.diagram, e2.gens[i]);
        for (int c = 0; c < m; ++c)
            if (f[c1(c)] != c2(f[c])) return false;
    }
    return true;
}

std::vector<ComponentMap> equivariant_component_maps(const EquivariantDiagram& e1,
                                                     const EquivariantDiagram& e2) {
    std::vector<ComponentMap> out;
    int m = e1.comp_count();
    if (e2.comp_count() != m) return out;
    ComponentMap f(m, -1);
    std::vector<bool> used(m, false);
    auto rec = [&](auto&& self, int c) -> void {
        if (c == m) {
            if (valid_component_map(e1, e2, f)) out.push_back(f);
            return;
        }
        for (int t = 0; t < m; ++t) {
            if (used[t]) continue;
            f[c] = t;
            used[t] = true;
            self(self, c + 1);
            used[t] = false;
            f[c] = -1;
        }
    };
    rec(rec, 0);
    return out;
}

namespace {

// Backtracking state for the equivariant isomorphism search.  Assigning one
// node forces the whole orbit through generator propagation; the search
// branches only on orbit representatives.
struct Search {
    const EquivariantDiagram& e1;
    const EquivariantDiagram& e2;
    const ComponentMap& f;
    const IsomSearchOptions& opts;
    const std::function<bool(const Perm&)>& visit;
    int n;
    std::vector<int> img;                // node of d1 -> node of d2, -1 unset
    std::vector<int> pre;                // node of d2 -> node of d1, -1 unset
    std::vector<bool> in_mu1, in_mu2;
    long long count = 0;
    bool stopped = false;

    Search(const EquivariantDiagram& a, const EquivariantDiagram& b, const ComponentMap& fm,
           const IsomSearchOptions& o, const std::function<bool(const Perm&)>& vis)
        : e1(a), e2(b), f(fm), opts(o), visit(vis), n(a.diagram.total_nodes),
          img(n, -1), pre(n, -1), in_mu1(n, false), in_mu2(n, false) {
        if (opts.mu1)
            for (int v : *opts.mu1) in_mu1[v] = true;
        if (opts.mu2)
            for (int v : *opts.mu2) in_mu2[v] = true;
    }

    bool compatible(int v, int w) const {
        if (f[e1.diagram.comp_of(v)] != e2.diagram.comp_of(w)) return false;
        if (opts.mu1 && in_mu1[v] != in_mu2[w]) return false;
        for (int u = 0; u < n; ++u) {
            if (img[u] < 0) continue;
            if (e1.diagram.cartan[v][u] != e2.diagram.cartan[w][img[u]]) return false;
            if (e1.diagram.cartan[u][v] != e2.diagram.cartan[img[u]][w]) return false;
        }
        return true;
    }

    // Assigns v -> w and propagates through the generators; records
    // assignments into trail for rollback.  Returns false on conflict.
    bool assign(int v, int w, std::vector<int>& trail) {
        std::queue<std::pair<int, int>> todo;
        todo.push({v, w});
        while (!todo.empty()) {
            auto [x, y] = todo.front();
            todo.pop();
            if (img[x] >= 0) {
                if (img[x] != y) return false;
                continue;
            }
            if (pre[y] >= 0) return false;
            if (!compatible(x, y)) return false;
            img[x] = y;
            pre[y] = x;
            trail.push_back(x);
            for (std::size_t i = 0; i < e1.gens.size(); ++i)
                todo.push({e1.gens[i](x), e2.gens[i](y)});
        }
        return true;
    }

    void rollback(std::vector<int>& trail, std::size_t from) {
        while (trail.size() > from) {
            int x = trail.back();
            trail.pop_back();
            pre[img[x]] = -1;
            img[x] = -1;
        }
    }

    void run() {
        std::vector<int> trail;
        for (auto [v, w] : opts.pins) {
            if (v < 0 || v >= n || w < 0 || w >= n) return;
            if (!assign(v, w, trail)) return;
        }
        rec(trail);
    }

    void rec(std::vector<int>& trail) {
        if (stopped) return;
        int v = 0;
        while (v < n && img[v] >= 0) ++v;
        if (v == n) {
            ++count;
            if (!visit(Perm(img))) stopped = true;
            return;
        }
        for (int w = 0; w < n && !stopped; ++w) {
            if (pre[w] >= 0) continue;
            std::size_t mark = trail.size();
            if (assign(v, w, trail)) rec(trail);
            rollback(trail, mark);
        }
    }
};

}  // namespace

long long equivariant_isoms(const EquivariantDiagram& e1, const EquivariantDiagram& e2,
                            const ComponentMap& f, const IsomSearchOptions& opts,
                            const std::function<bool(const Perm&)>& visit) {
    if (e1.diagram.total_nodes != e2.diagram.total_nodes) return 0;
    if (!valid_component_map(e1, e2, f)) return 0;
    if (e1.gens.size() != e2.gens.size()) return 0;
    Search s(e1, e2, f, opts, visit);
    s.run();
    return s.count;
}

std::vector<Perm> equivariant_isom_list(const EquivariantDiagram& e1,
                                        const EquivariantDiagram& e2, const ComponentMap& f,
                                        const IsomSearchOptions& opts, long long max_count) {
    std::vector<Perm> out;
    equivariant_isoms(e1, e2, f, opts, [&](const Perm& p) {
        out.push_back(p);
        return max_count <= 0 || static_cast<long long>(out.size()) < max_count;
    });
    return out;
}

std::vector<Perm> small_generating_set(const std::vector<Perm>& elements, int degree) {
    std::vector<Perm> gens;
    PermGroup g = PermGroup::generated(degree, {});
    for (const Perm& p : elements) {
        if (!g.contains(p)) {
            gens.push_back(p);
            g = PermGroup::generated(degree, gens);
        }
        if (g.order() == elements.size()) break;
    }
    if (gens.empty()) gens.push_back(Perm(degree));  // keep the list nonempty
    return gens;
}

}  // namespace deldyn

