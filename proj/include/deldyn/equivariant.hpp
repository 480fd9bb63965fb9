#pragma once

// Finite group actions on Dynkin diagrams and the equivariant-isomorphism
// backtracking engine.
//
// Two diagrams are compared under "the same abstract group" by aligning
// their generator lists index by index; the alignment is a group
// isomorphism exactly when the closure of the paired generators has the
// same order as the closure on either side.

#include "diagram.hpp"
#include "perm.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace deldyn {

struct EquivariantDiagram {
    Diagram diagram;
    std::vector<Perm> gens;  // each preserves the Cartan matrix
    PermGroup group;         // closure of gens on the node set

    int comp_count() const { return diagram.comp_count(); }
};

// Validates that every generator is a diagram automorphism.
std::optional<EquivariantDiagram> make_equivariant(const Diagram& d,
                                                   const std::vector<Perm>& gens);

// Induced permutation of component indices (defined for any automorphism).
Perm component_perm(const Diagram& d, const Perm& p);

// Orbit partition of a node subset; orbits sorted by minimum element.
std::vector<std::vector<int>> orbits(const EquivariantDiagram& e,
                                     const std::vector<int>& subset);

// Smallest group-stable superset, sorted.
std::vector<int> closure(const EquivariantDiagram& e, const std::vector<int>& subset);

struct Pi0 {
    std::vector<std::vector<int>> comp_orbits;  // partition of component indices
    bool transitive = false;
};
Pi0 pi0(const EquivariantDiagram& e);

// Number of subset nodes in each component; requires the subset to be
// group-stable (the count is then constant along component orbits).
std::optional<std::vector<int>> degree_over_pi0(const EquivariantDiagram& e,
                                                const std::vector<int>& subset);

// Restricts the action to a subgroup given by its element set.  Fails when
// the set is not a subgroup of the acting group.  The restricted diagram
// keeps a small generating set of h as its generator list.
std::optional<EquivariantDiagram> restrict_action(const EquivariantDiagram& e,
                                                  const std::vector<Perm>& h_elements);

// True when the aligned generator lists of e1 and e2 present the same
// abstract group (paired closure has matching order on both sides).
bool shared_abstract_group(const EquivariantDiagram& e1, const EquivariantDiagram& e2);

// A component map f: components of d1 -> components of d2 (0-based indices).
using ComponentMap = std::vector<int>;

// Checks f is a bijection commuting with every aligned generator pair.
bool valid_component_map(const EquivariantDiagram& e1, const EquivariantDiagram& e2,
                         const ComponentMap& f);

// All equivariant component bijections, lexicographically ordered.
std::vector<ComponentMap> equivariant_component_maps(const EquivariantDiagram& e1,
                                                     const EquivariantDiagram& e2);

struct IsomSearchOptions {
    // Forced partial assignment, pairs (node of d1, node of d2).
    std::vector<std::pair<int, int>> pins;
    // When set, only bijections with phi(mu1) = mu2 are emitted.
    const std::vector<int>* mu1 = nullptr;
    const std::vector<int>* mu2 = nullptr;
};

// Enumerates node bijections d1 -> d2 that preserve Cartan data, commute
// with every aligned generator pair, and induce f on components.  Results
// stream to the visitor in deterministic (lexicographic) order; the visitor
// returns false to stop.  Returns the number of bijections visited.
// Preconditions (shared abstract group, valid f) are the caller's job;
// violations simply produce an empty stream.
long long equivariant_isoms(const EquivariantDiagram& e1, const EquivariantDiagram& e2,
                            const ComponentMap& f, const IsomSearchOptions& opts,
                            const std::function<bool(const Perm&)>& visit);

// Convenience: collect all results (or the first max_count when positive).
std::vector<Perm> equivariant_isom_list(const EquivariantDiagram& e1,
                                        const EquivariantDiagram& e2,
                                        const ComponentMap& f,
                                        const IsomSearchOptions& opts = {},
                                        long long max_count = 0);

// Small generating set of an explicitly listed group.
std::vector<Perm> small_generating_set(const std::vector<Perm>& elements, int degree);

}  // namespace deldyn
