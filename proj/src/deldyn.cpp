#include "deldyn/deldyn.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace deldyn {

std::string to_string(const DiagramType& t) {
    switch (t.tag) {
        case TypeTag::A: return "A" + std::to_string(t.rank);
        case TypeTag::B: return "B" + std::to_string(t.rank);
        case TypeTag::C: return "C" + std::to_string(t.rank);
        case TypeTag::D_R: return "D" + std::to_string(t.rank) + "^R";
        case TypeTag::D_H: return "D" + std::to_string(t.rank) + "^H";
        case TypeTag::NOT_SYMPLECTIC: return "NOT_SYMPLECTIC";
        case TypeTag::NOT_POPULATED: return "NOT_POPULATED";
    }
    return "?";
}

std::optional<std::string> validate(const DeligneDynkin& d) {
    std::set<int> comps_seen;
    for (int v : d.mu) {
        if (v < 0 || v >= d.base.diagram.total_nodes)
            return "mu node " + std::to_string(v + 1) + " is out of range";
        int c = d.base.diagram.comp_of(v);
        auto sp = special_nodes(d.base.diagram, c);
        if (!std::binary_search(sp.begin(), sp.end(), v))
            return "mu node " + std::to_string(v + 1) + " is not special in its component";
        if (!comps_seen.insert(c).second)
            return "mu meets component " + std::to_string(c + 1) + " more than once";
    }
    return std::nullopt;
}

bool is_irreducible(const DeligneDynkin& d) { return pi0(d.base).transitive; }

bool is_populated(const DeligneDynkin& d) {
    auto p = pi0(d.base);
    for (const auto& orbit : p.comp_orbits) {
        bool met = false;
        for (int v : d.mu)
            if (std::find(orbit.begin(), orbit.end(), d.base.diagram.comp_of(v)) !=
                orbit.end()) {
                met = true;
                break;
            }
        if (!met) return false;
    }
    return true;
}

std::vector<int> symplectic_set(const DeligneDynkin& d) {
    // Per mu node, the good set inside its component.
    std::map<int, std::set<int>> good_in_comp;  // comp -> alpha-symplectic nodes
    for (int alpha : d.mu) {
        auto nodes = symplectic_nodes(d.base.diagram, alpha);
        good_in_comp[d.base.diagram.comp_of(alpha)] = {nodes.begin(), nodes.end()};
    }
    std::vector<int> all;
    for (int v = 0; v < d.base.diagram.total_nodes; ++v) all.push_back(v);
    std::vector<int> out;
    for (const auto& orbit : orbits(d.base, all)) {
        bool ok = true;
        for (int v : orbit) {
            auto it = good_in_comp.find(d.base.diagram.comp_of(v));
            if (it != good_in_comp.end() && !it->second.count(v)) {
                ok = false;
                break;
            }
        }
        if (ok)
            for (int v : orbit) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_symplectic(const DeligneDynkin& d) {
    auto s = symplectic_set(d);
    auto p = pi0(d.base);
    for (const auto& orbit : p.comp_orbits) {
        bool met = false;
        for (int v : s)
            if (std::find(orbit.begin(), orbit.end(), d.base.diagram.comp_of(v)) !=
                orbit.end()) {
                met = true;
                break;
            }
        if (!met) return false;
    }
    return true;
}

namespace {

// Structural alias for classification: C2 is B2, D3 is A3.
SimpleType effective_type(const SimpleType& t) {
    if (t.tag == 'C' && t.rank == 2) return {'B', 2};
    if (t.tag == 'D' && t.rank == 3) return {'A', 3};
    return t;
}

}  // namespace

std::optional<DiagramType> type_of(const DeligneDynkin& d) {
    if (!is_irreducible(d)) return std::nullopt;
    if (!is_populated(d)) return DiagramType{TypeTag::NOT_POPULATED, 0};
    if (!is_symplectic(d)) return DiagramType{TypeTag::NOT_SYMPLECTIC, 0};

    SimpleType t = effective_type(d.base.diagram.comps[0].type);
    int n = t.rank;
    switch (t.tag) {
        case 'A': return DiagramType{TypeTag::A, n};
        case 'B': return DiagramType{TypeTag::B, n};
        case 'C': return DiagramType{TypeTag::C, n};
        case 'D': break;
        default:
            // E/F/G components have no symplectic nodes, so the symplectic
            // check above already returned.
            return DiagramType{TypeTag::NOT_SYMPLECTIC, 0};
    }

    if (n == 4) {
        // Triality makes the three extremal nodes equivalent; the degree of
        // the closure of mu is the discriminating invariant.
        auto deg = degree_over_pi0(d.base, closure(d.base, d.mu));
        int dd = 0;
        for (int c : *deg) dd = std::max(dd, c);
        if (dd == 1) return DiagramType{TypeTag::D_R, 4};
        if (dd == 2) return DiagramType{TypeTag::D_H, 4};
        return DiagramType{TypeTag::NOT_SYMPLECTIC, 0};
    }

    // n >= 5: the fork end and the chain end are inequivalent; classify by
    // the position of each mu node.  Mixed positions cannot be symplectic.
    bool all_chain_end = true, all_fork = true;
    for (int alpha : d.mu) {
        int local = d.base.diagram.local_of(alpha);
        if (local == 1)
            all_fork = false;
        else
            all_chain_end = false;
    }
    if (all_chain_end) return DiagramType{TypeTag::D_R, n};
    if (all_fork) return DiagramType{TypeTag::D_H, n};
    return DiagramType{TypeTag::NOT_SYMPLECTIC, 0};
}

std::optional<std::vector<int>> u_set(const DeligneDynkin& d) {
    auto t = type_of(d);
    if (!t || !is_populated(d) || !is_symplectic(d)) return std::nullopt;
    switch (t->tag) {
        case TypeTag::A:
        case TypeTag::B:
        case TypeTag::D_R: return symplectic_set(d);
        case TypeTag::C:
        case TypeTag::D_H: return closure(d.base, d.mu);
        default: return std::nullopt;
    }
}

std::vector<Perm> aut_id_unchecked(const DeligneDynkin& d) {
    ComponentMap id(d.base.comp_count());
    for (int c = 0; c < d.base.comp_count(); ++c) id[c] = c;
    IsomSearchOptions opts;
    opts.mu1 = &d.mu;
    opts.mu2 = &d.mu;
    return equivariant_isom_list(d.base, d.base, id, opts);
}

std::optional<std::vector<Perm>> aut_id(const DeligneDynkin& d) {
    if (!is_irreducible(d) || !is_populated(d) || !is_symplectic(d)) return std::nullopt;
    return aut_id_unchecked(d);
}

std::optional<std::vector<LocalPiece>> local_components(const DeligneDynkin& d,
                                                        const std::vector<Perm>& h_gens) {
    for (const Perm& g : h_gens)
        if (!d.base.group.contains(g)) return std::nullopt;

    EquivariantDiagram restricted;
    restricted.diagram = d.base.diagram;
    restricted.gens = h_gens;
    restricted.group = PermGroup::generated(d.base.diagram.total_nodes, h_gens);

    std::vector<LocalPiece> out;
    for (const auto& comp_orbit : pi0(restricted).comp_orbits) {
        LocalPiece piece;
        piece.comps = comp_orbit;
        std::vector<SimpleType> types;
        std::vector<int> node_to_piece(d.base.diagram.total_nodes, -1);
        for (int c : comp_orbit) {
            types.push_back(d.base.diagram.comps[c].type);
            for (int l = 1; l <= d.base.diagram.comps[c].node_count(); ++l) {
                int v = d.base.diagram.node(c, l);
                node_to_piece[v] = static_cast<int>(piece.nodes.size());
                piece.nodes.push_back(v);
            }
        }
        auto sub = build_diagram(types);
        std::vector<Perm> sub_gens;
        for (const Perm& g : h_gens) {
            Perm sg(static_cast<int>(piece.nodes.size()));
            for (std::size_t i = 0; i < piece.nodes.size(); ++i)
                sg.img[i] = node_to_piece[g(piece.nodes[i])];
            sub_gens.push_back(sg);
        }
        auto eq = make_equivariant(*sub, sub_gens);
        piece.piece.base = *eq;
        for (int v : d.mu)
            if (node_to_piece[v] >= 0) piece.piece.mu.push_back(node_to_piece[v]);
        std::sort(piece.piece.mu.begin(), piece.piece.mu.end());
        out.push_back(std::move(piece));
    }
    return out;
}

}  // namespace deldyn
