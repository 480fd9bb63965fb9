#pragma once

// Deligne-Dynkin diagrams: an equivariant diagram plus a subset mu of
// special nodes meeting each connected component at most once.  mu is not
// required to be stable under the action.

#include "equivariant.hpp"

#include <optional>
#include <string>
#include <vector>

namespace deldyn {

struct DeligneDynkin {
    EquivariantDiagram base;
    std::vector<int> mu;  // sorted global node ids
};

enum class TypeTag { A, B, C, D_R, D_H, NOT_SYMPLECTIC, NOT_POPULATED };

struct DiagramType {
    TypeTag tag = TypeTag::NOT_POPULATED;
    int rank = 0;  // meaningful for A/B/C/D tags only

    friend bool operator==(const DiagramType& a, const DiagramType& b) {
        return a.tag == b.tag && a.rank == b.rank;
    }
    friend bool operator!=(const DiagramType& a, const DiagramType& b) { return !(a == b); }
};

std::string to_string(const DiagramType& t);

// Checks the two defining invariants (mu consists of special nodes, at most
// one per connected component).  Returns the first violation, or nullopt.
std::optional<std::string> validate(const DeligneDynkin& d);

// Irreducible: the action is transitive on components.
bool is_irreducible(const DeligneDynkin& d);

// Populated: mu meets every irreducible (orbit-of-components) piece.
bool is_populated(const DeligneDynkin& d);

// The mu-symplectic set S: union of node orbits O such that for every
// alpha in mu, the part of O inside alpha's component consists of
// alpha-symplectic nodes.  Components whose orbit carries no mu node
// impose no constraint.  Sorted global ids.
std::vector<int> symplectic_set(const DeligneDynkin& d);

// Symplectic: S meets every irreducible piece.
bool is_symplectic(const DeligneDynkin& d);

// Classification of an irreducible diagram.  Returns nullopt when the
// diagram is not irreducible (caller error).  Small ranks classify through
// their structural aliases: C2 as B2, D3 as A3.
std::optional<DiagramType> type_of(const DeligneDynkin& d);

// The determining subset U: S for types A/B/D^R, the closure of mu for
// C/D^H.  Requires irreducible + populated + symplectic.
std::optional<std::vector<int>> u_set(const DeligneDynkin& d);

// All equivariant automorphisms inducing the identity on components and
// preserving mu.  Requires irreducible + populated + symplectic.
std::optional<std::vector<Perm>> aut_id(const DeligneDynkin& d);

// Same enumeration without the predicate gate (used on local pieces, where
// restriction may break populated/symplectic).
std::vector<Perm> aut_id_unchecked(const DeligneDynkin& d);

// One irreducible piece of the restriction of d to a subgroup.
struct LocalPiece {
    DeligneDynkin piece;
    std::vector<int> nodes;  // piece node id -> original global node id
    std::vector<int> comps;  // piece component -> original component
};

// Restricts the action to the subgroup generated by h_gens (each must lie
// in the acting group) and splits into orbit-of-component pieces.  The
// pieces keep h_gens as their aligned generator lists.
std::optional<std::vector<LocalPiece>> local_components(const DeligneDynkin& d,
                                                        const std::vector<Perm>& h_gens);

}  // namespace deldyn
