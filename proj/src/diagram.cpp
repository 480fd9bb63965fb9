#include "deldyn/diagram.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <set>

namespace deldyn {

namespace {

// Bonds of a finite type as (i, j, cij, cji) with 1-based local indices,
// following Bourbaki numbering.
std::vector<std::array<int, 4>> bonds(const SimpleType& t) {
    std::vector<std::array<int, 4>> out;
    int n = t.rank;
    auto single = [&](int i, int j) { out.push_back({i, j, -1, -1}); };
    switch (t.tag) {
        case 'A':
            for (int i = 1; i < n; ++i) single(i, i + 1);
            break;
        case 'B':
            for (int i = 1; i + 1 < n; ++i) single(i, i + 1);
            out.push_back({n - 1, n, -1, -2});  // alpha_n short
            break;
        case 'C':
            for (int i = 1; i + 1 < n; ++i) single(i, i + 1);
            out.push_back({n - 1, n, -2, -1});  // alpha_n long
            break;
        case 'D':
            for (int i = 1; i + 2 < n; ++i) single(i, i + 1);
            single(std::max(1, n - 2), n - 1);
            single(std::max(1, n - 2), n);
            break;
        case 'E':
            single(1, 3);
            single(3, 4);
            single(2, 4);
            for (int i = 4; i < n; ++i) single(i, i + 1);
            break;
        case 'F':
            single(1, 2);
            out.push_back({2, 3, -1, -2});  // alpha_3, alpha_4 short
            single(3, 4);
            break;
        case 'G':
            out.push_back({1, 2, -3, -1});  // alpha_1 short
            break;
    }
    return out;
}

// Attachment of the affine node alpha_0, as (neighbour j, c0j, cj0).
std::vector<std::array<int, 3>> affine_attachment(const SimpleType& t) {
    int n = t.rank;
    switch (t.tag) {
        case 'A':
            if (n == 1) return {{1, -2, -2}};
            return {{1, -1, -1}, {n, -1, -1}};
        case 'B':
            if (n == 2) return {{2, -1, -2}};
            return {{2, -1, -1}};
        case 'C': return {{1, -1, -2}};
        case 'D':
            if (n == 3) return {{2, -1, -1}, {3, -1, -1}};
            return {{2, -1, -1}};
        case 'E':
            if (n == 6) return {{2, -1, -1}};
            if (n == 7) return {{1, -1, -1}};
            return {{8, -1, -1}};
        case 'F': return {{1, -1, -1}};
        case 'G': return {{2, -1, -1}};
    }
    return {};
}

void rebuild_cartan(Diagram& d) {
    d.offsets.clear();
    d.total_nodes = 0;
    for (const auto& c : d.comps) {
        d.offsets.push_back(d.total_nodes);
        d.total_nodes += c.node_count();
    }
    d.cartan.assign(d.total_nodes, std::vector<int>(d.total_nodes, 0));
    for (int v = 0; v < d.total_nodes; ++v) d.cartan[v][v] = 2;
    for (int ci = 0; ci < d.comp_count(); ++ci) {
        const auto& c = d.comps[ci];
        int off = d.offsets[ci];
        for (const auto& b : bonds(c.type)) {
            d.cartan[off + b[0] - 1][off + b[1] - 1] = b[2];
            d.cartan[off + b[1] - 1][off + b[0] - 1] = b[3];
        }
        if (c.affine) {
            int a0 = off + c.type.rank;  // local rank+1
            for (const auto& a : affine_attachment(c.type)) {
                d.cartan[a0][off + a[0] - 1] = a[1];
                d.cartan[off + a[0] - 1][a0] = a[2];
            }
        }
    }
}

std::vector<std::vector<Rat>> invert(const std::vector<std::vector<int>>& m) {
    int n = static_cast<int>(m.size());
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = Rat(m[i][j]);
        a[i][n + i] = Rat(1);
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (piv < n && a[piv][col] == Rat(0)) ++piv;
        std::swap(a[piv], a[col]);
        Rat inv = Rat(1) / a[col][col];
        for (auto& x : a[col]) x *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == Rat(0)) continue;
            Rat f = a[r][col];
            for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::vector<std::vector<Rat>> out(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = a[i][n + j];
    return out;
}

const std::vector<std::vector<Rat>>& inverse_cartan_of(const SimpleType& t) {
    static std::map<std::pair<char, int>, std::vector<std::vector<Rat>>> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(t.tag, t.rank);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, invert(cartan_matrix(t))).first;
    return it->second;
}

// Local special nodes (1-based) of a single type, via the affine orbit.
const std::vector<int>& local_special_nodes(const SimpleType& t) {
    static std::map<std::pair<char, int>, std::vector<int>> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(t.tag, t.rank);
    auto it = memo.find(key);
    if (it == memo.end()) {
        Diagram d;
        d.comps.push_back({t, true});
        rebuild_cartan(d);
        PermGroup aut = diagram_automorphisms(d);
        std::vector<int> locals;
        for (int v : aut.orbit(t.rank))  // node alpha_0 has 0-based id = rank
            if (v != t.rank) locals.push_back(v + 1);
        std::sort(locals.begin(), locals.end());
        it = memo.emplace(key, std::move(locals)).first;
    }
    return it->second;
}

}  // namespace

int Diagram::comp_of(int v) const {
    int c = 0;
    while (c + 1 < comp_count() && offsets[c + 1] <= v) ++c;
    return c;
}

bool Diagram::all_finite() const {
    for (const auto& c : comps)
        if (c.affine) return false;
    return true;
}

std::optional<Diagram> build_diagram(const std::vector<SimpleType>& spec) {
    Diagram d;
    for (const auto& t : spec) {
        if (!valid_type(t)) return std::nullopt;
        d.comps.push_back({t, false});
    }
    rebuild_cartan(d);
    return d;
}

std::vector<std::vector<int>> cartan_matrix(const SimpleType& t) {
    Diagram d;
    d.comps.push_back({t, false});
    rebuild_cartan(d);
    return d.cartan;
}

std::vector<std::vector<std::vector<Rat>>> cartan_inverse(const Diagram& d) {
    std::vector<std::vector<std::vector<Rat>>> out;
    for (const auto& c : d.comps) out.push_back(inverse_cartan_of(c.type));
    return out;
}

std::optional<Rat> pairing(const Diagram& d, int alpha, int omega) {
    if (alpha < 0 || alpha >= d.total_nodes || omega < 0 || omega >= d.total_nodes)
        return std::nullopt;
    int c = d.comp_of(alpha);
    if (c != d.comp_of(omega) || d.comps[c].affine) return std::nullopt;
    const auto& inv = inverse_cartan_of(d.comps[c].type);
    return inv[d.local_of(alpha) - 1][d.local_of(omega) - 1];
}

std::optional<Diagram> affine_extension(const Diagram& d, int comp) {
    if (comp < 0 || comp >= d.comp_count() || d.comps[comp].affine) return std::nullopt;
    Diagram out = d;
    out.comps[comp].affine = true;
    rebuild_cartan(out);
    return out;
}

PermGroup diagram_automorphisms(const Diagram& d) {
    int n = d.total_nodes;
    // Signature pruning: an automorphism can only map v to w when the
    // multiset of (sorted row entries, sorted column entries) matches.
    auto signature = [&](int v) {
        std::vector<int> row, col;
        for (int j = 0; j < n; ++j) {
            if (j == v) continue;
            row.push_back(d.cartan[v][j]);
            col.push_back(d.cartan[j][v]);
        }
        std::sort(row.begin(), row.end());
        std::sort(col.begin(), col.end());
        return std::make_pair(row, col);
    };
    std::vector<std::pair<std::vector<int>, std::vector<int>>> sig(n);
    for (int v = 0; v < n; ++v) sig[v] = signature(v);

    std::vector<Perm> found;
    std::vector<int> img(n, -1);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            found.emplace_back(img);
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (used[w] || sig[v] != sig[w]) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u) {
                if (d.cartan[v][u] != d.cartan[w][img[u]]) ok = false;
                if (d.cartan[u][v] != d.cartan[img[u]][w]) ok = false;
            }
            if (!ok) continue;
            img[v] = w;
            used[w] = true;
            self(self, v + 1);
            used[w] = false;
            img[v] = -1;
        }
    };
    rec(rec, 0);

    // Reduce to a small generating set.
    std::sort(found.begin(), found.end());
    std::vector<Perm> gens;
    PermGroup g = PermGroup::generated(n, {});
    for (const Perm& p : found) {
        if (!g.contains(p)) {
            gens.push_back(p);
            g = PermGroup::generated(n, gens);
        }
        if (g.order() == found.size()) break;
    }
    return g;
}

std::vector<int> special_nodes(const Diagram& d, int comp) {
    std::vector<int> out;
    if (comp < 0 || comp >= d.comp_count() || d.comps[comp].affine) return out;
    for (int local : local_special_nodes(d.comps[comp].type))
        out.push_back(d.node(comp, local));
    return out;
}

Perm opposition_involution(const Diagram& d) {
    Perm p(d.total_nodes);
    for (int ci = 0; ci < d.comp_count(); ++ci) {
        const auto& c = d.comps[ci];
        if (c.affine) continue;
        int n = c.type.rank;
        auto swap_locals = [&](int a, int b) {
            std::swap(p.img[d.node(ci, a)], p.img[d.node(ci, b)]);
        };
        if (c.type.tag == 'A') {
            for (int i = 1; 2 * i < n + 1; ++i) swap_locals(i, n + 1 - i);
        } else if (c.type.tag == 'D' && n % 2 == 1) {
            swap_locals(n - 1, n);
        } else if (c.type.tag == 'E' && n == 6) {
            swap_locals(1, 6);
            swap_locals(3, 5);
        }
    }
    return p;
}

namespace {

// All roots of a finite type, as integer coordinate vectors in the basis of
// simple roots, generated by closing the simple roots under reflections.
std::vector<std::vector<int>> all_roots(const SimpleType& t) {
    auto cm = cartan_matrix(t);
    int n = t.rank;
    std::set<std::vector<int>> roots;
    std::vector<std::vector<int>> todo;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        roots.insert(e);
        todo.push_back(e);
    }
    while (!todo.empty()) {
        auto beta = todo.back();
        todo.pop_back();
        for (int i = 0; i < n; ++i) {
            int c = 0;
            for (int j = 0; j < n; ++j) c += cm[i][j] * beta[j];
            auto refl = beta;
            refl[i] -= c;
            if (roots.insert(refl).second) todo.push_back(refl);
        }
    }
    return {roots.begin(), roots.end()};
}

}  // namespace

std::optional<Perm> oppinv_bruteforce_oracle(const Diagram& d, int max_total_rank) {
    int total = 0;
    for (const auto& c : d.comps) {
        if (c.affine) return std::nullopt;
        total += c.type.rank;
    }
    if (total > max_total_rank) return std::nullopt;

    Perm out(d.total_nodes);
    for (int ci = 0; ci < d.comp_count(); ++ci) {
        const SimpleType t = d.comps[ci].type;
        int n = t.rank;
        auto roots = all_roots(t);
        auto cm = cartan_matrix(t);
        int nr = static_cast<int>(roots.size());
        auto index_of = [&](const std::vector<int>& r) {
            return static_cast<int>(
                std::lower_bound(roots.begin(), roots.end(), r) - roots.begin());
        };
        // Simple reflections as permutations of the root list.
        std::vector<Perm> gens;
        for (int i = 0; i < n; ++i) {
            Perm s(nr);
            for (int k = 0; k < nr; ++k) {
                int c = 0;
                for (int j = 0; j < n; ++j) c += cm[i][j] * roots[k][j];
                auto refl = roots[k];
                refl[i] -= c;
                s.img[k] = index_of(refl);
            }
            gens.push_back(s);
        }
        PermGroup weyl = PermGroup::generated(nr, gens);
        // w_0 is the unique element sending every simple root to the negative
        // of a simple root; tau(i) reads off which one.
        std::vector<int> simple_idx(n), neg_idx(n);
        for (int i = 0; i < n; ++i) {
            std::vector<int> e(n, 0);
            e[i] = 1;
            simple_idx[i] = index_of(e);
            for (auto& x : e) x = -x;
            neg_idx[i] = index_of(e);
        }
        bool assigned = false;
        for (const Perm& w : weyl.elements) {
            std::vector<int> tau(n, -1);
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                int im = w(simple_idx[i]);
                auto it = std::find(neg_idx.begin(), neg_idx.end(), im);
                if (it == neg_idx.end())
                    ok = false;
                else
                    tau[i] = static_cast<int>(it - neg_idx.begin());
            }
            if (ok) {
                for (int i = 0; i < n; ++i) out.img[d.node(ci, i + 1)] = d.node(ci, tau[i] + 1);
                assigned = true;
                break;
            }
        }
        if (!assigned) return std::nullopt;  // cannot happen for finite types
    }
    return out;
}

std::optional<bool> is_symplectic_node(const Diagram& d, int alpha, int omega) {
    int c = d.comp_of(alpha);
    if (c != d.comp_of(omega) || d.comps[c].affine) return std::nullopt;
    auto sp = special_nodes(d, c);
    if (!std::binary_search(sp.begin(), sp.end(), alpha)) return std::nullopt;
    Perm tau = opposition_involution(d);
    auto a = pairing(d, alpha, omega);
    auto b = pairing(d, alpha, tau(omega));
    return *a + *b == Rat(1);
}

std::vector<int> symplectic_nodes(const Diagram& d, int alpha) {
    std::vector<int> out;
    int c = d.comp_of(alpha);
    for (int local = 1; local <= d.comps[c].type.rank; ++local) {
        int v = d.node(c, local);
        auto r = is_symplectic_node(d, alpha, v);
        if (r && *r) out.push_back(v);
    }
    return out;
}

long long root_count_bruteforce(const SimpleType& t) {
    return static_cast<long long>(all_roots(t).size());
}

}  // namespace deldyn
