#pragma once

// Dynkin diagrams: Cartan matrices (finite and affine), inverse Cartan
// pairings, affine extensions, diagram automorphisms, special nodes, the
// opposition involution, and the symplectic-node test.
//
// Conventions, fixed once for the whole library:
//  * cartan[i][j] = <alpha_i^vee, alpha_j> = 2(a_i,a_j)/(a_i,a_i).
//    So B_n has cartan[n-2][n-1] = -1, cartan[n-1][n-2] = -2 (0-based),
//    and C_n the transpose of that.
//  * Node numbering inside each component follows Bourbaki: chains run
//    1..n; D_n forks at n-2 into n-1 and n; E_n has the branch node 2
//    attached to node 4 of the chain 1,3,4,5,...
//  * An affine component carries the extra node alpha_0 as its last local
//    node (local index rank+1).
//  * pairing(alpha, omega) = (C^-1)[alpha][omega], the value of the
//    fundamental coweight at alpha against the fundamental weight at omega.
// Global node identifiers are 0-based and consecutive; the I/O layer shifts
// to 1-based.

#include "perm.hpp"
#include "rational.hpp"
#include "types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace deldyn {

struct Component {
    SimpleType type;
    bool affine = false;

    int node_count() const { return type.rank + (affine ? 1 : 0); }
};

struct Diagram {
    std::vector<Component> comps;
    std::vector<int> offsets;              // node offset per component
    int total_nodes = 0;
    std::vector<std::vector<int>> cartan;  // full integer Cartan matrix

    int comp_count() const { return static_cast<int>(comps.size()); }
    // node id of local index (1-based, Bourbaki; rank+1 = alpha_0 if affine)
    int node(int comp, int local) const { return offsets[comp] + local - 1; }
    int comp_of(int v) const;
    int local_of(int v) const { return v - offsets[comp_of(v)] + 1; }
    bool all_finite() const;

    friend bool operator==(const Diagram& a, const Diagram& b) {
        auto key = [](const Diagram& d) {
            std::vector<std::pair<std::pair<char, int>, bool>> k;
            for (const auto& c : d.comps) k.push_back({{c.type.tag, c.type.rank}, c.affine});
            return k;
        };
        return key(a) == key(b);
    }
};

// Builds a finite-type diagram; rejects invalid (tag, rank) pairs.
std::optional<Diagram> build_diagram(const std::vector<SimpleType>& spec);

// Cartan matrix of a single finite type, 0-based local indices.
std::vector<std::vector<int>> cartan_matrix(const SimpleType& t);

// Exact inverse Cartan matrix per component; requires all components finite.
std::vector<std::vector<std::vector<Rat>>> cartan_inverse(const Diagram& d);

// pairing between the fundamental coweight at node alpha and the fundamental
// weight at node omega; both global ids, same finite component required.
std::optional<Rat> pairing(const Diagram& d, int alpha, int omega);

// Replaces the given finite component by its affine extension (adds alpha_0).
std::optional<Diagram> affine_extension(const Diagram& d, int comp);

// Full automorphism group of the diagram (permutations preserving cartan).
PermGroup diagram_automorphisms(const Diagram& d);

// Special nodes of a finite component: the nodes lying in the
// Aut(affine extension)-orbit of alpha_0.  Returns global node ids, sorted.
std::vector<int> special_nodes(const Diagram& d, int comp);

// Opposition involution tau = -w_0 by the closed-form classification:
// nontrivial exactly on A_k (k >= 2), D_k (k odd), E6.
Perm opposition_involution(const Diagram& d);

// Independent oracle: computes w_0 by exhaustive Weyl-group generation on the
// root set and reads tau off -w_0.  Refuses when total rank exceeds the cap.
std::optional<Perm> oppinv_bruteforce_oracle(const Diagram& d, int max_total_rank = 4);

// omega is alpha-symplectic iff pairing(alpha, omega + tau(omega)) = 1.
// Requires alpha special, both nodes in the same finite component.
std::optional<bool> is_symplectic_node(const Diagram& d, int alpha, int omega);

// All alpha-symplectic nodes of alpha's component, sorted global ids.
std::vector<int> symplectic_nodes(const Diagram& d, int alpha);

// Number of roots found by brute-force closure from the Cartan matrix;
// cross-checks the closed-form count.  Intended for rank <= 8.
long long root_count_bruteforce(const SimpleType& t);

}  // namespace deldyn
