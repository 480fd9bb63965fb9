#include "deldyn/localglobal.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"

using namespace deldyn;

namespace {

Perm pc(const std::string& text, int n) {
    auto p = deldyn::parse_cycles(text, n);
    REQUIRE(p.has_value());
    return *p;
}

DeligneDynkin dd(const std::vector<SimpleType>& types, const std::vector<std::string>& gens,
                 const std::vector<int>& mu_1based) {
    auto diag = build_diagram(types);
    REQUIRE(diag.has_value());
    std::vector<Perm> perms;
    for (const auto& s : gens) perms.push_back(pc(s, diag->total_nodes));
    auto e = make_equivariant(*diag, perms);
    REQUIRE(e.has_value());
    std::vector<int> mu;
    for (int v : mu_1based) mu.push_back(v - 1);
    std::sort(mu.begin(), mu.end());
    return DeligneDynkin{*e, mu};
}

ComponentMap idmap(int m) {
    ComponentMap f(m);
    for (int c = 0; c < m; ++c) f[c] = c;
    return f;
}

std::string instance_key(const Instance& inst) {
    std::string k;
    auto desc = [&](const DeligneDynkin& d) {
        for (const auto& comp : d.base.diagram.comps)
            k += comp.type.tag + std::to_string(comp.type.rank) + ",";
        k += "|g:";
        for (const auto& g : d.base.gens) k += to_cycle_string(g) + ";";
        k += "|m:";
        for (int v : d.mu) k += std::to_string(v) + ",";
    };
    desc(inst.d1);
    k += "||";
    desc(inst.d2);
    k += "||f:";
    for (int c : inst.f) k += std::to_string(c) + ",";
    return k;
}

}  // namespace

TEST_CASE("joint group exists exactly for aligned generator lists") {
    auto d1 = dd({{'A', 1}, {'A', 1}}, {"(1 2)"}, {});
    auto d2 = dd({{'A', 1}, {'A', 1}}, {"(1 2)"}, {});
    auto jg = joint_group(d1.base, d2.base);
    REQUIRE(jg.has_value());
    CHECK(jg->order() == 2);
    CHECK(jg->degree == 4);

    // Mismatched orders on the two sides: the alignment kills one side.
    auto flat = dd({{'A', 1}, {'A', 1}}, {"(1)"}, {});
    CHECK_FALSE(joint_group(d1.base, flat.base).has_value());

    // Round trip through join/split.
    Perm j = join_perm(d1.base.gens[0], d2.base.gens[0]);
    auto [a, b] = split_perm(j, 2);
    CHECK(a == d1.base.gens[0]);
    CHECK(b == d2.base.gens[0]);
}

TEST_CASE("cyclic family of S3 has five members, trivial first") {
    PermGroup s3 = PermGroup::generated(
        3, {pc("(1 2)", 3), pc("(1 2 3)", 3)});
    ChebotarevFamily fam = chebotarev_family(s3);
    CHECK(fam.locals.size() == 5);
    CHECK(fam.locals[0].size() == 1);  // trivial subgroup first
    std::vector<std::size_t> orders;
    for (const auto& sub : fam.locals) orders.push_back(sub.size());
    CHECK(orders == std::vector<std::size_t>{1, 2, 2, 2, 3});
    // Every group element generates some member.
    for (const Perm& g : s3.elements) {
        bool found = false;
        for (const auto& sub : fam.locals)
            found = found || (std::find(sub.begin(), sub.end(), g) != sub.end() &&
                              sub.size() == static_cast<std::size_t>(perm_order(g)));
        CHECK(found);
    }
}

TEST_CASE("subgroup classes of S3 up to conjugacy") {
    PermGroup s3 = PermGroup::generated(
        3, {pc("(1 2)", 3), pc("(1 2 3)", 3)});
    auto classes = subgroup_conjugacy_classes(s3);
    REQUIRE(classes.size() == 4);
    std::vector<std::size_t> orders;
    for (const auto& c : classes) orders.push_back(c.size());
    CHECK(orders == std::vector<std::size_t>{1, 2, 3, 6});

    auto capped = subgroup_conjugacy_classes(s3, 3);
    CHECK(capped.size() == 3);

    // The three transpositions are conjugate, so only one class of order 2.
    auto v4 = PermGroup::generated(4, {pc("(1 2)", 4), pc("(3 4)", 4)});
    auto vc = subgroup_conjugacy_classes(v4);
    // Klein four group: trivial, three C2 (none conjugate here: the group is
    // abelian), the whole group.
    CHECK(vc.size() == 5);
}

TEST_CASE("oracle finds and refuses isomorphisms") {
    auto b3a = dd({{'B', 3}}, {}, {1});
    auto b3b = dd({{'B', 3}}, {}, {1});
    auto phi = decide_isom_oracle(b3a, b3b, idmap(1));
    REQUIRE(phi.has_value());
    CHECK(phi->is_identity());
    CHECK_FALSE(verify_isom(b3a, b3b, idmap(1), *phi).has_value());

    // Different Cartan data.
    auto c3 = dd({{'C', 3}}, {}, {3});
    CHECK_FALSE(decide_isom_oracle(b3a, c3, idmap(1)).has_value());

    // Same diagram, but the R and H forms of D4 are not isomorphic.
    auto d4r = dd({{'D', 4}}, {"(3 4)"}, {1});
    auto d4h = dd({{'D', 4}}, {"(3 4)"}, {3});
    REQUIRE(type_of(d4r).has_value());
    CHECK(type_of(d4r)->tag == TypeTag::D_R);
    CHECK(type_of(d4h)->tag == TypeTag::D_H);
    CHECK_FALSE(decide_isom_oracle(d4r, d4h, idmap(1)).has_value());
}

TEST_CASE("verify_isom reports concrete defects") {
    auto b3 = dd({{'B', 3}}, {}, {1});
    auto b3_other = dd({{'B', 3}}, {}, {});
    Perm id(3);

    // mu not preserved
    auto defect = verify_isom(b3, b3_other, idmap(1), id);
    REQUIRE(defect.has_value());
    CHECK(defect->find("mu") != std::string::npos);

    // breaks the Cartan matrix
    auto bad = pc("(1 3)", 3);
    auto defect2 = verify_isom(b3, b3, idmap(1), bad);
    REQUIRE(defect2.has_value());
    CHECK(defect2->find("Cartan") != std::string::npos);

    // wrong degree
    auto defect3 = verify_isom(b3, b3, idmap(1), Perm(5));
    CHECK(defect3.has_value());

    // not equivariant
    auto pair1 = dd({{'A', 1}, {'A', 1}}, {"(1 2)"}, {});
    auto pair2 = dd({{'A', 1}, {'A', 1}}, {"(1 2)"}, {});
    // identity commutes, fine:
    CHECK_FALSE(verify_isom(pair1, pair2, idmap(2), Perm(2)).has_value());
}

TEST_CASE("glue over the trivial group returns the local witness") {
    auto d1 = dd({{'B', 3}}, {}, {1});
    auto d2 = dd({{'B', 3}}, {}, {1});
    auto jg = joint_group(d1.base, d2.base);
    REQUIRE(jg.has_value());
    auto fam = chebotarev_family(*jg);
    REQUIRE(fam.locals.size() == 1);
    auto wit = compute_witnesses(d1, d2, idmap(1), fam);
    REQUIRE(wit.complete());
    auto outcome = glue(d1, d2, idmap(1), fam, wit);
    REQUIRE(std::holds_alternative<GlueResult>(outcome));
    const auto& res = std::get<GlueResult>(outcome);
    CHECK(res.phi == *wit.psi[0]);
    CHECK_FALSE(verify_glue_result(d1, d2, idmap(1), fam, wit, res).has_value());
    // The glued map is exactly what the oracle finds.
    CHECK(res.phi == *decide_isom_oracle(d1, d2, idmap(1)));
}

TEST_CASE("glue on a quaternionic D4 over C2 agrees with the stored witness") {
    auto d1 = dd({{'D', 4}}, {"(3 4)"}, {3});
    auto d2 = dd({{'D', 4}}, {"(3 4)"}, {3});
    auto jg = joint_group(d1.base, d2.base);
    REQUIRE(jg.has_value());
    auto fam = chebotarev_family(*jg);
    CHECK(fam.locals.size() == 2);
    auto wit = compute_witnesses(d1, d2, idmap(1), fam);
    REQUIRE(wit.complete());
    auto outcome = glue(d1, d2, idmap(1), fam, wit);
    REQUIRE(std::holds_alternative<GlueResult>(outcome));
    const auto& res = std::get<GlueResult>(outcome);
    CHECK_FALSE(verify_glue_result(d1, d2, idmap(1), fam, wit, res).has_value());
    // The reported place repeats the stored witness verbatim.
    const Perm& psi = *wit.psi[res.local_index];
    for (int v : res.piece_nodes) CHECK(res.phi(v) == psi(v));
}

TEST_CASE("glue flips mu through the canonical involution when needed") {
    // Two A3 components swapped by the group; mu sits at an end node on
    // each side, but at opposite ends, so the straight extension misses it.
    auto d1 = dd({{'A', 3}, {'A', 3}}, {"(1 4)(2 5)(3 6)"}, {1});
    auto d2 = dd({{'A', 3}, {'A', 3}}, {"(1 4)(2 5)(3 6)"}, {3});
    REQUIRE(type_of(d1).has_value());
    CHECK(*type_of(d1) == *type_of(d2));
    auto rep = verify_theorem(Instance{d1, d2, idmap(2)});
    CHECK(rep.verdict == Verdict::PASS);
}

TEST_CASE("theorem passes on a component swap") {
    auto d1 = dd({{'A', 1}, {'A', 1}}, {"(1 2)"}, {1});
    auto d2 = dd({{'A', 1}, {'A', 1}}, {"(1 2)"}, {2});
    ComponentMap swap{1, 0};
    auto rep = verify_theorem(Instance{d1, d2, swap});
    CHECK(rep.verdict == Verdict::PASS);
    CHECK(rep.locals_found == rep.locals_total);
    REQUIRE(rep.glue.has_value());
    CHECK(rep.glue->phi == pc("(1 2)", 2));

    // Same pair over the identity component map: mu lives in the wrong
    // component, so not even the trivial restriction has a witness.
    auto rep2 = verify_theorem(Instance{d1, d2, idmap(2)});
    CHECK(rep2.verdict == Verdict::VACUOUS);
}

TEST_CASE("verdicts classify hypothesis failures and vacuous pairs") {
    // Not populated: empty mu.
    auto empty1 = dd({{'B', 3}}, {}, {});
    auto empty2 = dd({{'B', 3}}, {}, {});
    CHECK(verify_theorem(Instance{empty1, empty2, idmap(1)}).verdict ==
          Verdict::OUT_OF_HYPOTHESIS);

    // Not irreducible: two components, no action.
    auto red1 = dd({{'A', 1}, {'A', 1}}, {}, {1, 2});
    CHECK(verify_theorem(Instance{red1, red1, idmap(2)}).verdict ==
          Verdict::OUT_OF_HYPOTHESIS);

    // Hypotheses hold on both sides but nothing matches: B3 against C3.
    auto b3 = dd({{'B', 3}}, {}, {1});
    auto c3 = dd({{'C', 3}}, {}, {3});
    auto rep = verify_theorem(Instance{b3, c3, idmap(1)});
    CHECK(rep.verdict == Verdict::VACUOUS);
    CHECK(rep.locals_found == 0);
}

TEST_CASE("theorem passes across a relabeling of one side") {
    // Conjugating one side by a diagram automorphism must not change the
    // verdict; here (1 3) turns the (3 4) action into (1 4).
    auto d1 = dd({{'D', 4}}, {"(3 4)"}, {3});
    auto d2 = dd({{'D', 4}}, {"(1 4)"}, {1});
    REQUIRE(type_of(d2).has_value());
    CHECK(type_of(d2)->tag == TypeTag::D_H);
    auto rep = verify_theorem(Instance{d1, d2, idmap(1)});
    CHECK(rep.verdict == Verdict::PASS);
}

TEST_CASE("bigger pass cases exercise each glue branch") {
    // B branch with a genuine two component action; mu lives in opposite
    // components, so the component map has to swap.
    auto b1 = dd({{'B', 3}, {'B', 3}}, {"(1 4)(2 5)(3 6)"}, {1});
    auto b2 = dd({{'B', 3}, {'B', 3}}, {"(1 4)(2 5)(3 6)"}, {4});
    auto repb = verify_theorem(Instance{b1, b2, ComponentMap{1, 0}});
    CHECK(repb.verdict == Verdict::PASS);

    // C branch.
    auto c1 = dd({{'C', 3}}, {}, {3});
    CHECK(verify_theorem(Instance{c1, c1, idmap(1)}).verdict == Verdict::PASS);

    // A branch with tau-fixed mu (two global automorphisms).
    auto a1 = dd({{'A', 3}}, {}, {2});
    CHECK(verify_theorem(Instance{a1, a1, idmap(1)}).verdict == Verdict::PASS);

    // D_R branch, rank five so the canonical involution is mu-free.
    auto dr1 = dd({{'D', 5}}, {}, {1});
    CHECK(verify_theorem(Instance{dr1, dr1, idmap(1)}).verdict == Verdict::PASS);

    // D_H branch, rank five.
    auto dh1 = dd({{'D', 5}}, {}, {5});
    auto dh2 = dd({{'D', 5}}, {}, {4});
    CHECK(verify_theorem(Instance{dh1, dh2, idmap(1)}).verdict == Verdict::PASS);
}

TEST_CASE("local pieces share type and automorphism count with the whole") {
    for (const auto& d : {dd({{'D', 4}}, {"(3 4)"}, {3}),
                          dd({{'D', 4}}, {"(3 4)"}, {1}),
                          dd({{'A', 3}, {'A', 3}}, {"(1 4)(2 5)(3 6)"}, {2}),
                          dd({{'B', 2}, {'B', 2}}, {"(1 3)(2 4)"}, {1}),
                          dd({{'A', 4}}, {}, {2})}) {
        CHECK(locally_same_type_holds(d));
        CHECK(locally_same_aut_holds(d));
        auto predicted = predicted_aut_count(d);
        auto auts = aut_id(d);
        REQUIRE(predicted.has_value());
        REQUIRE(auts.has_value());
        CHECK(static_cast<std::size_t>(*predicted) == auts->size());
    }
}

TEST_CASE("generator alignments count isomorphisms up to inner twists") {
    PermGroup c3 = PermGroup::generated(3, {pc("(1 2 3)", 3)});
    auto a_c3 = generator_alignments(c3.elements, small_generating_set(c3.elements, 3),
                                     c3.elements);
    CHECK(a_c3.size() == 2);  // outer automorphism group of C3 has order 2

    PermGroup s3 = PermGroup::generated(
        3, {pc("(1 2)", 3), pc("(1 2 3)", 3)});
    auto a_s3 = generator_alignments(s3.elements, small_generating_set(s3.elements, 3),
                                     s3.elements);
    CHECK(a_s3.size() == 1);  // all automorphisms of S3 are inner

    // Non-isomorphic groups align in no way.
    PermGroup c4 = PermGroup::generated(4, {pc("(1 2 3 4)", 4)});
    PermGroup v4 = PermGroup::generated(4, {pc("(1 2)(3 4)", 4),
                                            pc("(1 3)(2 4)", 4)});
    CHECK(generator_alignments(c4.elements, small_generating_set(c4.elements, 4),
                               v4.elements)
              .empty());
}

TEST_CASE("tiny bounds enumerate the single A1 frame") {
    InstanceBounds bounds;
    bounds.max_group_order = 1;
    bounds.max_rank = 1;
    bounds.tags = "A";
    bounds.max_components = 1;

    std::vector<InstanceFrame> frames;
    enumerate_frames(bounds, [&](const InstanceFrame& fr) {
        frames.push_back(fr);
        return true;
    });
    REQUIRE(frames.size() == 1);
    CHECK(frames[0].type1.tag == 'A');
    CHECK(frames[0].m == 1);

    long long count = 0;
    enumerate_instances(bounds, [&](const Instance&) {
        ++count;
        return true;
    });
    CHECK(count == 4);  // mu in {none, node 1} on each side
}

TEST_CASE("instance enumeration is deterministic") {
    InstanceBounds bounds;
    bounds.max_group_order = 6;
    bounds.max_rank = 2;
    bounds.tags = "AB";
    bounds.max_components = 2;

    auto keys = [&]() {
        std::vector<std::string> out;
        enumerate_instances(bounds, [&](const Instance& inst) {
            out.push_back(instance_key(inst));
            return true;
        });
        return out;
    };
    auto run1 = keys();
    auto run2 = keys();
    CHECK(run1 == run2);
    CHECK(!run1.empty());
}

TEST_CASE("triality frames appear once the order bound allows them") {
    InstanceBounds bounds;
    bounds.max_group_order = 3;
    bounds.max_rank = 4;
    bounds.tags = "D";
    bounds.max_components = 1;

    std::vector<InstanceFrame> frames;
    enumerate_frames(bounds, [&](const InstanceFrame& fr) {
        frames.push_back(fr);
        return true;
    });
    // trivial pair, the C2 pair, and the two alignments of the C3 pair
    CHECK(frames.size() == 4);
    int triality = 0;
    for (const auto& fr : frames)
        if (!fr.gens1.empty() && perm_order(fr.gens1[0]) == 3) ++triality;
    CHECK(triality == 2);
}

TEST_CASE("small campaign finds no counterexamples") {
    CampaignOptions opts;
    opts.bounds.max_group_order = 4;
    opts.bounds.max_rank = 2;
    opts.bounds.tags = "AB";
    opts.bounds.max_components = 2;
    opts.jobs = 1;

    CampaignResult r1 = run_campaign(opts, nullptr);
    CHECK(r1.counterexamples.empty());
    CHECK(r1.pass > 0);
    CHECK(r1.instances > 0);
    CHECK(r1.pass + r1.vacuous + r1.out_of_hypothesis == r1.instances);

    // The outcome does not depend on the job count.
    opts.jobs = 4;
    CampaignResult r4 = run_campaign(opts, nullptr);
    CHECK(r4.frames == r1.frames);
    CHECK(r4.instances == r1.instances);
    CHECK(r4.pass == r1.pass);
    CHECK(r4.vacuous == r1.vacuous);
    CHECK(r4.out_of_hypothesis == r1.out_of_hypothesis);
    CHECK(r4.pass_by_type == r1.pass_by_type);
    CHECK(r4.counterexamples.size() == r1.counterexamples.size());
}
