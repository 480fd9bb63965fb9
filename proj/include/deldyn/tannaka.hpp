#pragma once

// Shadow of the Tannakian bookkeeping used on connected reductive groups:
// a group datum is reduced to the multiset of simple factors of its derived
// subgroup plus the rank of its center, and a representation is reduced to
// the acting datum and its dimension.  The adjoint-object and hyperadjoint
// operators act on these shadows; Goursat decomposition works on honest
// permutation groups.

#include "perm.hpp"
#include "types.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace deldyn {

// Isogeny-coarse datum of a connected reductive group.  `adjoint` records
// whether the group is presented in adjoint form; it is bookkeeping only and
// deliberately excluded from equality.
struct ReductiveDatum {
    std::vector<SimpleType> comps;  // kept sorted
    int center_rank = 0;
    bool adjoint = false;

    friend bool operator==(const ReductiveDatum& a, const ReductiveDatum& b) {
        return a.comps == b.comps && a.center_rank == b.center_rank;
    }
    friend bool operator!=(const ReductiveDatum& a, const ReductiveDatum& b) { return !(a == b); }
};

// Normalizes (sorts components) and checks validity of every simple type and
// nonnegativity of the center rank.
std::optional<ReductiveDatum> make_datum(std::vector<SimpleType> comps, int center_rank,
                                         bool adjoint = false);

ReductiveDatum trivial_datum();
bool is_trivial(const ReductiveDatum& g);

std::string to_string(const ReductiveDatum& g);

// A representation's shadow: which datum acts, and the dimension.  A faithful
// representation is assumed; dimension 0 encodes the zero object, on which
// only the trivial datum acts.
struct TannakianObject {
    ReductiveDatum acting;
    long long dimension = 0;

    friend bool operator==(const TannakianObject& a, const TannakianObject& b) {
        return a.acting == b.acting && a.dimension == b.dimension;
    }
    friend bool operator!=(const TannakianObject& a, const TannakianObject& b) { return !(a == b); }
};

TannakianObject zero_object();

// The adjoint representation of the acting group, as an object.  A trivial
// acting datum yields the zero object.  Otherwise the dimension is the sum of
// the simple factors' Lie algebra dimensions plus the center rank, and the
// new acting datum is the adjoint quotient (same simple factors, center
// collapsed), or the trivial datum when there are no simple factors.
TannakianObject adjoint_object(const TannakianObject& v);

struct HyperadjointResult {
    TannakianObject object;
    int index = 0;  // first i with V^(i) == V^(i+1)
};

// Iterates adjoint_object until it stabilizes.  The chain provably becomes
// constant after at most two steps; exceeding that is an internal error.
std::variant<HyperadjointResult, std::string> hyperadjoint(const TannakianObject& v);

// Checks the summand property of hyperadjoint across a product: given data
// for two factors and for a subgroup of their product that surjects onto
// each factor, the hyperadjoint object of the subgroup must embed into the
// sum of the factors' hyperadjoint objects (component multisets nest,
// dimensions bounded).  The precondition that the joint components embed
// into the union of the factor components is an input error when violated;
// a failed conclusion is reported as a defect string.
struct HaSumReport {
    HyperadjointResult joint;
    HyperadjointResult left;
    HyperadjointResult right;
};
std::variant<HaSumReport, std::string> ha_sum_summand_check(const TannakianObject& joint,
                                                            const TannakianObject& left,
                                                            const TannakianObject& right);

// --- Goursat -------------------------------------------------------------

// A subgroup of a product of two permutation groups, given by the list of
// element pairs.  Projections to both factors are required to be surjective.
struct SubdirectProduct {
    PermGroup g1;
    PermGroup g2;
    std::vector<PairedPerm> sub;  // sorted by (first, second)
};

// Builds a subdirect product from generators of the subgroup, validating
// membership and surjectivity of both projections.
std::optional<SubdirectProduct> make_subdirect(const PermGroup& g1, const PermGroup& g2,
                                               const std::vector<PairedPerm>& pair_gens);

// Goursat data: the two kernels N1 = {a : (a,id) in sub}, N2 = {b : (id,b)
// in sub}, the coset partitions of g1/N1 and g2/N2 (each coset sorted, the
// partition ordered by least element), and the induced bijection between
// them (quotient_map[i] = index of the g2/N2 coset matched with coset i).
struct GoursatData {
    std::vector<Perm> n1;
    std::vector<Perm> n2;
    std::vector<std::vector<Perm>> cosets1;
    std::vector<std::vector<Perm>> cosets2;
    std::vector<int> quotient_map;
};

// Decomposes a subdirect product per Goursat's lemma.  Fails with a message
// if the induced quotient relation is not a well-defined bijective
// homomorphism (cannot happen for genuine subgroups; guards corrupt input).
std::variant<GoursatData, std::string> goursat(const SubdirectProduct& sp);

// Re-verifies a decomposition: N1, N2 are normal subgroups, the map is a
// bijective homomorphism of quotients, and the graph reconstruction
// { (a,b) : coset_of(a) matched with coset_of(b) } reproduces sp.sub exactly.
std::optional<std::string> verify_goursat(const SubdirectProduct& sp, const GoursatData& gd);

// All subgroups of g1 x g2 (as paired permutations) whose projections onto
// both factors are surjective, sorted by (order, elements).  Enumerated
// through normal-subgroup pairs and quotient isomorphisms, so the cost is
// driven by the factor orders rather than the product order.
std::vector<std::vector<PairedPerm>> subdirect_subgroups(const PermGroup& g1, const PermGroup& g2);

// Named small permutation groups for sweep tests: "C1".."C12" cyclic on n
// points, "D2".."D6" dihedral (D2 the Klein four group on 4 points, Dn for
// n >= 3 of order 2n on n points), "A4" alternating on 4 points.
std::optional<PermGroup> named_group(const std::string& name);
std::vector<std::string> zoo_names(int max_order);

}  // namespace deldyn
