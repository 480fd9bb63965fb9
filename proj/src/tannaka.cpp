#include "deldyn/tannaka.hpp"

#include "deldyn/localglobal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace deldyn {

std::optional<ReductiveDatum> make_datum(std::vector<SimpleType> comps, int center_rank,
                                         bool adjoint) {
    if (center_rank < 0) return std::nullopt;
    for (const auto& t : comps)
        if (!valid_type(t)) return std::nullopt;
    std::sort(comps.begin(), comps.end());
    return ReductiveDatum{std::move(comps), center_rank, adjoint};
}

ReductiveDatum trivial_datum() { return ReductiveDatum{{}, 0, true}; }

bool is_trivial(const ReductiveDatum& g) { return g.comps.empty() && g.center_rank == 0; }

std::string to_string(const ReductiveDatum& g) {
    std::ostringstream out;
    for (std::size_t i = 0; i < g.comps.size(); ++i) {
        if (i) out << "+";
        out << to_string(g.comps[i]);
    }
    if (g.center_rank > 0) {
        if (!g.comps.empty()) out << "+";
        out << "T" << g.center_rank;
    }
    if (g.comps.empty() && g.center_rank == 0) out << "1";
    return out.str();
}

TannakianObject zero_object() { return TannakianObject{trivial_datum(), 0}; }

TannakianObject adjoint_object(const TannakianObject& v) {
    if (is_trivial(v.acting)) return zero_object();
    long long dim = v.acting.center_rank;
    for (const auto& t : v.acting.comps) dim += lie_dim(t);
    ReductiveDatum acting =
        v.acting.comps.empty() ? trivial_datum() : ReductiveDatum{v.acting.comps, 0, true};
    return TannakianObject{std::move(acting), dim};
}

std::variant<HyperadjointResult, std::string> hyperadjoint(const TannakianObject& v) {
    TannakianObject cur = v;
    for (int i = 0; i <= 3; ++i) {
        TannakianObject next = adjoint_object(cur);
        if (next == cur) {
            if (i > 2)
                return "internal: adjoint chain stabilized only after " + std::to_string(i) +
                       " steps";
            return HyperadjointResult{cur, i};
        }
        cur = next;
    }
    return std::string("internal: adjoint chain failed to stabilize within 4 steps");
}

namespace {

// a's multiset of simple types contained in b's?  Both sorted.
bool multiset_subset(const std::vector<SimpleType>& a, const std::vector<SimpleType>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<SimpleType> multiset_union(const std::vector<SimpleType>& a,
                                       const std::vector<SimpleType>& b) {
    std::vector<SimpleType> out;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

std::variant<HaSumReport, std::string> ha_sum_summand_check(const TannakianObject& joint,
                                                            const TannakianObject& left,
                                                            const TannakianObject& right) {
    auto factor_comps = multiset_union(left.acting.comps, right.acting.comps);
    if (!multiset_subset(joint.acting.comps, factor_comps))
        return std::string(
            "input: joint simple factors do not embed into the union of the factor data");

    HaSumReport rep;
    for (auto [src, dst] : {std::pair{&joint, &rep.joint}, {&left, &rep.left}, {&right, &rep.right}}) {
        auto r = hyperadjoint(*src);
        if (std::holds_alternative<std::string>(r)) return std::get<std::string>(r);
        *dst = std::get<HyperadjointResult>(r);
    }

    auto ha_union =
        multiset_union(rep.left.object.acting.comps, rep.right.object.acting.comps);
    if (!multiset_subset(rep.joint.object.acting.comps, ha_union))
        return std::string("defect: hyperadjoint simple factors escape the factor sum");
    if (rep.joint.object.dimension >
        rep.left.object.dimension + rep.right.object.dimension)
        return std::string("defect: hyperadjoint dimension exceeds the factor sum");
    return rep;
}

// --- Goursat -------------------------------------------------------------

std::optional<SubdirectProduct> make_subdirect(const PermGroup& g1, const PermGroup& g2,
                                               const std::vector<PairedPerm>& pair_gens) {
    for (const auto& pg : pair_gens) {
        if (pg.first.degree() != g1.degree || pg.second.degree() != g2.degree)
            return std::nullopt;
        if (!g1.contains(pg.first) || !g2.contains(pg.second)) return std::nullopt;
    }
    auto sub = paired_closure(pair_gens, g1.degree, g2.degree);
    std::set<Perm> firsts, seconds;
    for (const auto& pp : sub) {
        firsts.insert(pp.first);
        seconds.insert(pp.second);
    }
    if (firsts.size() != g1.order() || seconds.size() != g2.order()) return std::nullopt;
    return SubdirectProduct{g1, g2, std::move(sub)};
}

namespace {

// Partition of the full element list into cosets of n (given as a sorted
// element set); each coset sorted, cosets ordered by least element.  Returns
// the partition plus the coset index of every element.
std::pair<std::vector<std::vector<Perm>>, std::map<Perm, int>> coset_partition(
    const std::vector<Perm>& elements, const std::vector<Perm>& n) {
    std::vector<std::vector<Perm>> cosets;
    std::map<Perm, int> index;
    for (const auto& a : elements) {
        if (index.count(a)) continue;
        std::vector<Perm> coset;
        coset.reserve(n.size());
        for (const auto& h : n) coset.push_back(compose(a, h));
        std::sort(coset.begin(), coset.end());
        int idx = static_cast<int>(cosets.size());
        for (const auto& c : coset) index.emplace(c, idx);
        cosets.push_back(std::move(coset));
    }
    return {std::move(cosets), std::move(index)};
}

}  // namespace

std::variant<GoursatData, std::string> goursat(const SubdirectProduct& sp) {
    const Perm id1(sp.g1.degree), id2(sp.g2.degree);
    GoursatData gd;
    for (const auto& pp : sp.sub) {
        if (pp.second == id2) gd.n1.push_back(pp.first);
        if (pp.first == id1) gd.n2.push_back(pp.second);
    }
    std::sort(gd.n1.begin(), gd.n1.end());
    std::sort(gd.n2.begin(), gd.n2.end());

    auto [cosets1, idx1] = coset_partition(sp.g1.elements, gd.n1);
    auto [cosets2, idx2] = coset_partition(sp.g2.elements, gd.n2);
    if (cosets1.size() != cosets2.size())
        return std::string("quotients have different orders");

    std::vector<int> qmap(cosets1.size(), -1);
    std::vector<int> hit(cosets2.size(), 0);
    for (const auto& pp : sp.sub) {
        int i = idx1.at(pp.first), j = idx2.at(pp.second);
        if (qmap[i] == -1) {
            qmap[i] = j;
            ++hit[j];
        } else if (qmap[i] != j) {
            return std::string("quotient relation is not single-valued");
        }
    }
    for (std::size_t i = 0; i < qmap.size(); ++i)
        if (qmap[i] == -1) return std::string("quotient relation misses a coset");
    for (int h : hit)
        if (h != 1) return std::string("quotient relation is not injective");

    // Homomorphism property on coset representatives.
    for (std::size_t i = 0; i < cosets1.size(); ++i)
        for (std::size_t j = 0; j < cosets1.size(); ++j) {
            int prod1 = idx1.at(compose(cosets1[i][0], cosets1[j][0]));
            int prod2 = idx2.at(compose(cosets2[qmap[i]][0], cosets2[qmap[j]][0]));
            if (qmap[prod1] != prod2)
                return std::string("quotient relation is not a homomorphism");
        }

    gd.cosets1 = std::move(cosets1);
    gd.cosets2 = std::move(cosets2);
    gd.quotient_map = std::move(qmap);
    return gd;
}

namespace {

std::optional<std::string> check_normal_subgroup(const PermGroup& g, const std::vector<Perm>& n,
                                                 const char* label) {
    if (n.empty()) return std::string(label) + ": empty";
    for (const auto& h : n)
        if (!g.contains(h)) return std::string(label) + ": element outside the ambient group";
    std::set<Perm> nset(n.begin(), n.end());
    if (nset.size() != n.size()) return std::string(label) + ": repeated element";
    for (const auto& a : n)
        for (const auto& b : n)
            if (!nset.count(compose(a, b))) return std::string(label) + ": not closed";
    for (const auto& g0 : g.gens)
        for (const auto& h : n)
            if (!nset.count(compose(compose(g0, h), inverse(g0))))
                return std::string(label) + ": not normal";
    return std::nullopt;
}

}  // namespace

std::optional<std::string> verify_goursat(const SubdirectProduct& sp, const GoursatData& gd) {
    if (auto err = check_normal_subgroup(sp.g1, gd.n1, "N1")) return err;
    if (auto err = check_normal_subgroup(sp.g2, gd.n2, "N2")) return err;

    auto expect1 = coset_partition(sp.g1.elements, gd.n1);
    auto expect2 = coset_partition(sp.g2.elements, gd.n2);
    if (gd.cosets1 != expect1.first) return std::string("coset partition of the first factor is off");
    if (gd.cosets2 != expect2.first) return std::string("coset partition of the second factor is off");

    if (gd.quotient_map.size() != gd.cosets1.size() || gd.cosets1.size() != gd.cosets2.size())
        return std::string("quotient map has the wrong size");
    std::vector<int> hit(gd.cosets2.size(), 0);
    for (int j : gd.quotient_map) {
        if (j < 0 || j >= static_cast<int>(hit.size())) return std::string("quotient map out of range");
        ++hit[j];
    }
    for (int h : hit)
        if (h != 1) return std::string("quotient map is not a bijection");

    for (std::size_t i = 0; i < gd.cosets1.size(); ++i)
        for (std::size_t j = 0; j < gd.cosets1.size(); ++j) {
            int prod1 = expect1.second.at(compose(gd.cosets1[i][0], gd.cosets1[j][0]));
            int prod2 = expect2.second.at(
                compose(gd.cosets2[gd.quotient_map[i]][0], gd.cosets2[gd.quotient_map[j]][0]));
            if (gd.quotient_map[prod1] != prod2)
                return std::string("quotient map is not a homomorphism");
        }

    // Graph reconstruction must reproduce the subgroup exactly.
    std::vector<PairedPerm> rebuilt;
    for (std::size_t i = 0; i < gd.cosets1.size(); ++i)
        for (const auto& a : gd.cosets1[i])
            for (const auto& b : gd.cosets2[gd.quotient_map[i]]) rebuilt.push_back({a, b});
    std::sort(rebuilt.begin(), rebuilt.end());
    if (rebuilt != sp.sub) return std::string("graph reconstruction does not match the subgroup");
    return std::nullopt;
}

namespace {

std::vector<std::vector<Perm>> normal_subgroups(const PermGroup& g) {
    std::vector<std::vector<Perm>> out;
    for (const auto& sub : all_subgroups(g.elements, 0)) {
        bool normal = true;
        for (const auto& a : g.elements) {
            const Perm ai = inverse(a);
            for (const auto& n : sub) {
                if (!std::binary_search(sub.begin(), sub.end(), compose(a, compose(n, ai)))) {
                    normal = false;
                    break;
                }
            }
            if (!normal) break;
        }
        if (normal) out.push_back(sub);
    }
    return out;
}

// Multiplication table of G/N on coset indices.  Index 0 is the identity
// coset: the identity permutation is the lexicographic minimum of the whole
// group, so its coset leads the least-element ordering.
std::vector<std::vector<int>> quotient_table(const std::vector<std::vector<Perm>>& cosets,
                                             const std::map<Perm, int>& index) {
    const int k = static_cast<int>(cosets.size());
    std::vector<std::vector<int>> mul(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) mul[i][j] = index.at(compose(cosets[i][0], cosets[j][0]));
    return mul;
}

int table_element_order(const std::vector<std::vector<int>>& mul, int x) {
    int cur = x, ord = 1;
    while (cur != 0) {
        cur = mul[cur][x];
        ++ord;
    }
    return ord;
}

// Assigns map[x] = y and propagates products; false on any conflict.
bool propagate_iso(const std::vector<std::vector<int>>& m1, const std::vector<std::vector<int>>& m2,
                   std::vector<int>& map, std::vector<bool>& used, int x, int y) {
    if (map[x] != -1) return map[x] == y;
    if (used[y]) return false;
    map[x] = y;
    used[y] = true;
    const int n = static_cast<int>(m1.size());
    for (int a = 0; a < n; ++a) {
        if (map[a] == -1) continue;
        if (!propagate_iso(m1, m2, map, used, m1[x][a], m2[y][map[a]])) return false;
        if (!propagate_iso(m1, m2, map, used, m1[a][x], m2[map[a]][y])) return false;
    }
    return true;
}

// All isomorphisms between two small groups given by multiplication tables,
// as coset-index maps, in lexicographic order of generator images.
std::vector<std::vector<int>> table_isomorphisms(const std::vector<std::vector<int>>& m1,
                                                 const std::vector<std::vector<int>>& m2) {
    const int n = static_cast<int>(m1.size());
    if (n != static_cast<int>(m2.size())) return {};

    // greedy generating sequence of the first group
    std::vector<int> gens;
    std::vector<bool> generated(n, false);
    generated[0] = true;
    int covered = 1;
    while (covered < n) {
        int next = -1;
        for (int x = 1; x < n; ++x) {
            if (!generated[x]) {
                next = x;
                break;
            }
        }
        gens.push_back(next);
        // closure of the generated set with the new element
        bool grew = true;
        generated[next] = true;
        ++covered;
        while (grew) {
            grew = false;
            for (int a = 0; a < n; ++a) {
                if (!generated[a]) continue;
                for (int b = 0; b < n; ++b) {
                    if (!generated[b]) continue;
                    if (!generated[m1[a][b]]) {
                        generated[m1[a][b]] = true;
                        ++covered;
                        grew = true;
                    }
                }
            }
        }
    }

    std::vector<std::vector<int>> isos;
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    map[0] = 0;
    used[0] = true;

    std::function<void(std::size_t)> search = [&](std::size_t k) {
        if (k == gens.size()) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (map[m1[a][b]] != m2[map[a]][map[b]]) return;
            isos.push_back(map);
            return;
        }
        const int g = gens[k];
        if (map[g] != -1) {
            search(k + 1);
            return;
        }
        const int ord = table_element_order(m1, g);
        for (int y = 1; y < n; ++y) {
            if (used[y] || table_element_order(m2, y) != ord) continue;
            auto saved_map = map;
            auto saved_used = used;
            if (propagate_iso(m1, m2, map, used, g, y)) search(k + 1);
            map = saved_map;
            used = saved_used;
        }
    };
    search(0);
    return isos;
}

}  // namespace

std::vector<std::vector<PairedPerm>> subdirect_subgroups(const PermGroup& g1,
                                                         const PermGroup& g2) {
    // Reverse Goursat: every subdirect subgroup is the graph of exactly one
    // isomorphism G1/N1 -> G2/N2 over exactly one pair of normal subgroups,
    // so enumerate those instead of walking the product's subgroup lattice.
    std::vector<std::vector<PairedPerm>> out;
    const auto normals2 = normal_subgroups(g2);
    for (const auto& n1 : normal_subgroups(g1)) {
        auto [cosets1, idx1] = coset_partition(g1.elements, n1);
        const auto m1 = quotient_table(cosets1, idx1);
        for (const auto& n2 : normals2) {
            if (n1.size() * g2.order() != n2.size() * g1.order()) continue;
            auto [cosets2, idx2] = coset_partition(g2.elements, n2);
            const auto m2 = quotient_table(cosets2, idx2);
            for (const auto& iso : table_isomorphisms(m1, m2)) {
                std::vector<PairedPerm> pairs;
                pairs.reserve(g1.order() * n2.size());
                for (const auto& a : g1.elements)
                    for (const auto& b : cosets2[iso[idx1.at(a)]]) pairs.push_back({a, b});
                std::sort(pairs.begin(), pairs.end());
                out.push_back(std::move(pairs));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::optional<PermGroup> named_group(const std::string& name) {
    if (name.size() < 2) return std::nullopt;
    char kind = name[0];
    int n = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9') return std::nullopt;
        n = n * 10 + (name[i] - '0');
    }
    if (kind == 'C') {
        if (n < 1 || n > 12) return std::nullopt;
        if (n == 1) return PermGroup::trivial(1);
        std::vector<int> img(n);
        for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
        return PermGroup::generated(n, {Perm(std::move(img))});
    }
    if (kind == 'D') {
        if (n == 2)
            return PermGroup::generated(4, {Perm({1, 0, 2, 3}), Perm({0, 1, 3, 2})});
        if (n < 3 || n > 6) return std::nullopt;
        std::vector<int> rot(n), flip(n);
        for (int i = 0; i < n; ++i) {
            rot[i] = (i + 1) % n;
            flip[i] = (n - i) % n;
        }
        return PermGroup::generated(n, {Perm(std::move(rot)), Perm(std::move(flip))});
    }
    if (kind == 'A' && n == 4)
        return PermGroup::generated(4, {Perm({1, 2, 0, 3}), Perm({1, 0, 3, 2})});
    return std::nullopt;
}

std::vector<std::string> zoo_names(int max_order) {
    std::vector<std::string> names;
    for (int n = 1; n <= 12; ++n)
        if (n <= max_order) names.push_back("C" + std::to_string(n));
    if (4 <= max_order) names.push_back("D2");
    for (int n = 3; n <= 6; ++n)
        if (2 * n <= max_order) names.push_back("D" + std::to_string(n));
    if (12 <= max_order) names.push_back("A4");
    return names;
}

}  // namespace deldyn
