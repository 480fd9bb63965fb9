#pragma once

// Local-global gluing for isomorphisms of equivariant mu-diagrams.
//
// A finite family of cyclic subgroups stands in for the local Galois
// groups: every group element generates some member of the family, so a
// statement checked against the family captures exactly what a Chebotarev
// argument would provide.  On top of that sit a brute-force decision
// oracle, the constructive gluing algorithm (local witnesses in, global
// isomorphism plus an agreeing place out), and an exhaustive verification
// campaign over enumerated instances.
//
// Using all subgroups instead of the cyclic ones would strengthen the
// hypotheses and weaken the check; the family is deliberately cyclic-only.

#include "deldyn.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace deldyn {

// Joint permutations act block-diagonally on the disjoint union of the two
// node sets, so one subgroup of the joint group restricts both diagrams at
// once while keeping their generator lists aligned.
Perm join_perm(const Perm& a, const Perm& b);
std::pair<Perm, Perm> split_perm(const Perm& p, int deg1);

// Closure of the aligned generator pairs as a block-diagonal group; nullopt
// when the alignment is not a group isomorphism.
std::optional<PermGroup> joint_group(const EquivariantDiagram& e1,
                                     const EquivariantDiagram& e2);

struct ChebotarevFamily {
    PermGroup base;
    // All distinct cyclic subgroups, (order, element list)-sorted, trivial
    // subgroup first.  Every element of base generates some member.
    std::vector<std::vector<Perm>> locals;
};

ChebotarevFamily chebotarev_family(const PermGroup& g);

// Both diagrams restricted to a subgroup of their joint group.  Node sets,
// components and mu are unchanged; only the acting group shrinks.
std::pair<DeligneDynkin, DeligneDynkin> restrict_pair(const DeligneDynkin& d1,
                                                      const DeligneDynkin& d2,
                                                      const std::vector<Perm>& joint_subgroup);

// First equivariant mu-preserving isomorphism over f in search order, or
// nullopt.  This is the independent decision procedure the gluing algorithm
// is checked against.
std::optional<Perm> decide_isom_oracle(const DeligneDynkin& d1, const DeligneDynkin& d2,
                                       const ComponentMap& f);

// Direct re-check that phi is an isomorphism of mu-diagrams over f:
// bijective, Cartan-preserving, inducing f, commuting with the aligned
// generators, and mapping mu1 onto mu2.  Returns the first defect found.
std::optional<std::string> verify_isom(const DeligneDynkin& d1, const DeligneDynkin& d2,
                                       const ComponentMap& f, const Perm& phi);

struct LocalWitnessSet {
    // Aligned with ChebotarevFamily::locals; psi[i] is an isomorphism of
    // the restrictions to locals[i], over the global component map.
    std::vector<std::optional<Perm>> psi;

    bool complete() const {
        for (const auto& p : psi)
            if (!p) return false;
        return true;
    }
};

// Runs the oracle on every restriction in the family.
LocalWitnessSet compute_witnesses(const DeligneDynkin& d1, const DeligneDynkin& d2,
                                  const ComponentMap& f, const ChebotarevFamily& family);

struct GlueResult {
    Perm phi;                      // global isomorphism d1 -> d2
    int local_index = -1;          // member of the family
    int piece_index = -1;          // irreducible piece of d1 under that subgroup
    std::vector<int> piece_nodes;  // nodes of that piece (original d1 ids)
};

struct GlueFailure {
    bool precondition = false;  // bad input rather than inconsistent witnesses
    std::string reason;
};

using GlueOutcome = std::variant<GlueResult, GlueFailure>;

// Constructs a global isomorphism from a complete witness set.  Stages:
// same-type check; for types B/C the unique map forced by the topology;
// otherwise transport of the determining subset U, extension to the whole
// diagram, and composition with the canonical involution of d2 when the
// extension misses mu2.  The returned phi is adjusted by an automorphism of
// d1 so that it agrees verbatim with one stored witness on one irreducible
// piece whose automorphism count matches the global one; that piece is the
// reported place.  A non-precondition failure means the witnesses admit no
// compatible global isomorphism, which the verification harness treats as
// a counterexample.
GlueOutcome glue(const DeligneDynkin& d1, const DeligneDynkin& d2, const ComponentMap& f,
                 const ChebotarevFamily& family, const LocalWitnessSet& witnesses);

// Independent check of a glue result: phi passes verify_isom, the reported
// piece exists, phi agrees with the stored witness on it, and the piece's
// automorphism count equals the global one.
std::optional<std::string> verify_glue_result(const DeligneDynkin& d1, const DeligneDynkin& d2,
                                              const ComponentMap& f,
                                              const ChebotarevFamily& family,
                                              const LocalWitnessSet& witnesses,
                                              const GlueResult& res);

// In-model checks of the two restriction lemmas for one irreducible
// symplectic populated diagram: some cyclic subgroup of the acting group
// admits an irreducible piece with the same type (resp. with restriction
// inducing a bijection of the identity-component automorphisms).
bool locally_same_type_holds(const DeligneDynkin& d);
bool locally_same_aut_holds(const DeligneDynkin& d);

// |Aut_id| predicted by the classification case table: 1 for A1, B, C,
// D^H, and A_n with mu moved by the opposition involution; 2 for D^R and
// A_n (n >= 2) with mu fixed by it.  nullopt when the diagram is not
// irreducible symplectic populated.
std::optional<int> predicted_aut_count(const DeligneDynkin& d);

// ---------------------------------------------------------------------------
// Instance enumeration and the verification campaign.

struct InstanceBounds {
    std::size_t max_group_order = 24;
    int max_rank = 4;        // per component
    std::string tags = "ABCD";
    int max_components = 3;
};

struct Instance {
    DeligneDynkin d1, d2;
    ComponentMap f;
};

// A frame is everything about an instance except the mu choices: the
// component types on both sides, the aligned actions, and the component
// map.  C2 and D3 components are omitted from enumeration (they classify
// through B2 and A3).
struct InstanceFrame {
    SimpleType type1{'A', 1}, type2{'A', 1};
    int m = 1;
    std::vector<Perm> gens1, gens2;  // aligned generator lists
    ComponentMap f;
};

// Aligned generator images realizing every isomorphism from the group h1
// (with chosen generators h1_gens) onto h2, modulo inner twists on both
// sides; lexicographically first representative per orbit.  Empty when the
// groups are not isomorphic.
std::vector<std::vector<Perm>> generator_alignments(const std::vector<Perm>& h1,
                                                    const std::vector<Perm>& h1_gens,
                                                    const std::vector<Perm>& h2);

// Deterministic frame stream: same-type frames over subgroup-class pairs of
// the diagram automorphism group (transitive on components, order capped),
// then cross-type frames over purely component-permuting actions.  The
// visitor returns false to stop.
void enumerate_frames(const InstanceBounds& bounds,
                      const std::function<bool(const InstanceFrame&)>& visit);

// Frames expanded with every mu choice on both sides (at most one special
// node per component, including none).
void enumerate_instances(const InstanceBounds& bounds,
                         const std::function<bool(const Instance&)>& visit);

enum class Verdict {
    PASS,               // witnesses complete, glue succeeded and re-verified
    VACUOUS,            // some restriction admits no witness
    OUT_OF_HYPOTHESIS,  // instance not irreducible symplectic populated
    COUNTEREXAMPLE,     // would falsify the statement; carries a dump
};

std::string to_string(Verdict v);

struct VerifyReport {
    Verdict verdict = Verdict::OUT_OF_HYPOTHESIS;
    std::string detail;
    int locals_total = 0;
    int locals_found = 0;
    std::optional<GlueResult> glue;
};

VerifyReport verify_theorem(const Instance& inst, const ChebotarevFamily& family);
VerifyReport verify_theorem(const Instance& inst);  // builds the family itself

struct CampaignOptions {
    InstanceBounds bounds;
    int jobs = 1;
};

struct Counterexample {
    Instance inst;
    std::string detail;
};

struct CampaignResult {
    long long frames = 0;
    long long instances = 0;
    long long pass = 0;
    long long vacuous = 0;
    long long out_of_hypothesis = 0;
    std::map<std::string, long long> pass_by_type;
    std::vector<Counterexample> counterexamples;
};

// Runs verify_theorem over the whole instance stream.  Frames are verified
// independently (optionally in parallel) and merged in frame order, so the
// result does not depend on the job count.  The progress callback receives
// (frames done, frames total).
CampaignResult run_campaign(const CampaignOptions& opts,
                            const std::function<void(long long, long long)>& progress = {});

}  // namespace deldyn
