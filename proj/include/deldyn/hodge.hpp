#pragma once

// Fractional pre-Hodge bidegree arithmetic and the construction that turns an
// irreducible symplectic populated Deligne-Dynkin diagram into a weight-1
// classical Hodge profile (the bidegree shadow of an abelian variety).
//
// Number-theoretic inputs are modeled as finite sets with a group action: an
// etale algebra is its set of embeddings, a totally imaginary quadratic
// extension is a degree-2 cover of the component set with a fixed-point-free
// sheet involution, and a partial CM type is a subset of cover points hitting
// each mu-less component exactly once.

#include "deldyn.hpp"
#include "rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace deldyn {

struct HodgeEntry {
    Rat p, q;
    long long dim = 0;

    friend bool operator==(const HodgeEntry& a, const HodgeEntry& b) {
        return a.p == b.p && a.q == b.q && a.dim == b.dim;
    }
    friend bool operator<(const HodgeEntry& a, const HodgeEntry& b) {
        if (a.p != b.p) return a.p < b.p;
        if (a.q != b.q) return a.q < b.q;
        return a.dim < b.dim;
    }
};

// Multiset of bidegrees with dimensions, kept normalized: sorted by (p,q),
// equal bidegrees merged, zero dimensions dropped.
struct FractionalPreHodge {
    std::vector<HodgeEntry> entries;

    friend bool operator==(const FractionalPreHodge& a, const FractionalPreHodge& b) {
        return a.entries == b.entries;
    }
    friend bool operator!=(const FractionalPreHodge& a, const FractionalPreHodge& b) {
        return !(a == b);
    }
};

FractionalPreHodge make_profile(std::vector<HodgeEntry> raw);
long long total_dim(const FractionalPreHodge& h);

// First violation of dim(p,q) == dim(q,p), or nullopt.
std::optional<std::string> check_conjugation_symmetry(const FractionalPreHodge& h);

// Dimension grouped by weight p+q.
std::map<Rat, long long> weight_profile(const FractionalPreHodge& h);
bool is_pure(const FractionalPreHodge& h, const Rat& weight);

// All bidegrees integral (vacuously true when empty).
bool is_classical(const FractionalPreHodge& h);

// Entrywise bidegree sums with multiplied dimensions.
FractionalPreHodge tensor(const FractionalPreHodge& a, const FractionalPreHodge& b);

// A free module over an etale algebra, seen through its embedding set:
// one (bidegree, rank) per point, with an optional conjugation on points.
struct EtaleModule {
    int n_points = 0;
    std::vector<std::pair<Rat, Rat>> bideg;
    std::vector<long long> rank;
    std::optional<Perm> conj;
};

std::optional<std::string> validate_module(const EtaleModule& m);
bool cm_rank_one(const EtaleModule& m);
FractionalPreHodge module_profile(const EtaleModule& m);

// Pointwise tensor: v[i] shifted by m's bidegree and scaled by its rank at
// point i, then flattened.  Requires v to be indexed exactly by m's points.
std::optional<FractionalPreHodge> tensor_over_etale(const EtaleModule& m,
                                                    const std::vector<FractionalPreHodge>& v);

// Degree-2 cover of the component set of an equivariant diagram: point 2c+s
// is sheet s over component c, the conjugation swaps sheets, and gens[i]
// lifts the component permutation induced by the diagram's i-th generator.
struct QuadraticCover {
    std::vector<Perm> gens;
};

inline int cover_base(int point) { return point / 2; }
inline int cover_conj(int point) { return point ^ 1; }

std::optional<std::string> validate_cover(const EquivariantDiagram& e, const QuadraticCover& F);

// All equivariant degree-2 covers up to sheet relabeling, deterministically
// ordered.  Cost grows with 2^(gens * components); meant for small actions.
std::vector<QuadraticCover> enumerate_covers(const EquivariantDiagram& e);

// A partial CM type: cover points, disjoint from their conjugates, lying
// one over each component of the diagram that mu does not meet.
struct PartialCMType {
    std::vector<int> phi;  // sorted point ids
};

std::optional<std::string> validate_phi(const DeligneDynkin& d, const QuadraticCover& F,
                                        const PartialCMType& phi);
std::vector<PartialCMType> enumerate_phis(const DeligneDynkin& d, const QuadraticCover& F);

// Everything the construction produces, kept for reporting: the symplectic
// node set S indexing F_S, the pairing value r per node (empty on nodes
// whose component mu misses), the per-node Hodge types of V, the bidegree
// assignments on F and F_S, their tensor W_F over the pair set w_points
// (cover point, S index), and the final profile V' with its dimensions.
struct DeligneReport {
    std::vector<int> s_nodes;
    std::vector<std::optional<Rat>> r;
    std::vector<FractionalPreHodge> v_of_s;
    EtaleModule f;
    EtaleModule f_s;
    EtaleModule w_f;
    std::vector<std::pair<int, int>> w_points;
    FractionalPreHodge v_prime;
    long long dim_v_prime = 0;
    long long abelian_dim = 0;
    long long multiplicity = 1;
};

struct DeligneError {
    bool internal = false;  // false: bad input; true: a construction assertion failed
    std::string message;
};

// Runs the construction: checks the diagram is irreducible, populated and
// symplectic and that (F, phi) is valid, then assembles V, F_S, F, W_F and
// V' = W_F tensor V.  W_F must come out pure of weight 1 and V' classical of
// type {(1,0),(0,1)}; a violation is reported as an internal error.
std::variant<DeligneReport, DeligneError> deligne_construct(const DeligneDynkin& d,
                                                            const QuadraticCover& F,
                                                            const PartialCMType& phi,
                                                            long long multiplicity = 1);

}  // namespace deldyn
