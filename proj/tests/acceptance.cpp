// Acceptance harness.  Each criterion prints exactly one line:
//   CRITERION <k>: PASS - <detail>
//   CRITERION <k>: FAIL - <detail>
// The process exits nonzero when any criterion fails.
//
// Expected values here are computed from closed forms written out
// independently of the library's linear algebra, so the comparisons are
// genuine cross-checks, not echoes.

#include "deldyn/diagram.hpp"
#include "deldyn/json_io.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace deldyn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool g_all_pass = true;

void report(int k, bool pass, const std::string& detail) {
    if (!pass) g_all_pass = false;
    std::printf("CRITERION %d: %s - %s\n", k, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

std::vector<SimpleType> all_simple_types(int max_rank) {
    std::vector<SimpleType> out;
    for (char tag : {'A', 'B', 'C', 'D', 'E', 'F', 'G'})
        for (int n = 1; n <= max_rank; ++n)
            if (valid_type({tag, n})) out.push_back({tag, n});
    return out;
}

// Special node positions per the classification (1-based).
std::vector<int> expected_special(char tag, int n) {
    switch (tag) {
        case 'A': {
            std::vector<int> all;
            for (int i = 1; i <= n; ++i) all.push_back(i);
            return all;
        }
        case 'B': return {1};
        case 'C': return {n};
        case 'D':
            if (n == 3) return {1, 2, 3};
            if (n == 4) return {1, 3, 4};
            return {1, n - 1, n};
        case 'E':
            if (n == 6) return {1, 6};
            if (n == 7) return {7};
            return {};
        default: return {};  // F4, G2
    }
}

// The pairing label at node w for special node p, from the closed-form rows:
// A: q/(p+q), ..., pq/(p+q), ..., p/(p+q); B: 1,...,1,1/2; C: 1/2,...,l/2;
// D from node 1: 1,...,1,1/2,1/2; D from a fork node: 1/2,...,k/2 along the
// chain, k/4 on the opposite fork, k/4+1/2 on the special node itself.
Rat expected_label(char tag, int n, int p, int w) {
    switch (tag) {
        case 'A':
            return Rat(static_cast<long long>(std::min(w, p)) * (n + 1 - std::max(w, p)), n + 1);
        case 'B': return w < n ? Rat(1) : Rat(1, 2);
        case 'C': return Rat(w, 2);
        case 'D':
            if (p == 1) return w <= n - 2 ? Rat(1) : Rat(1, 2);
            if (w <= n - 2) return Rat(w, 2);
            return w == p ? Rat(n, 4) : Rat(n - 2, 4);
        default: return Rat(0);
    }
}

std::vector<int> expected_symplectic(char tag, int n, int p) {
    std::vector<int> all;
    for (int i = 1; i <= n; ++i) all.push_back(i);
    switch (tag) {
        case 'A': return (p == 1 || p == n) ? all : std::vector<int>{1, n};
        case 'B': return {n};
        case 'C': return {1};
        case 'D':
            if (p == 1) return {n - 1, n};
            if (n == 3) return all;
            if (n == 4) return {1, p == 3 ? 4 : 3};
            return {1};
        default: return {};  // E6, E7 have none
    }
}

std::vector<int> json_ints(const Json& a) {
    std::vector<int> out;
    for (const auto& e : a) out.push_back(e.get<int>());
    return out;
}

// Drawn-order label string of one table row, comma-joined.
std::string picture_row(const Json& table, const std::string& type, int alpha) {
    for (const auto& row : table["types"]) {
        if (row["type"] != type) continue;
        for (const auto& r : row["rows"]) {
            if (r["alpha"] != alpha) continue;
            std::string out;
            for (const auto& node : row["picture_order"]) {
                if (!out.empty()) out += ",";
                out += r["labels"][node.get<int>() - 1].get<std::string>();
            }
            return out;
        }
    }
    return "<missing>";
}

void criterion1() {
    auto t0 = Clock::now();
    Json t = table_json(8);
    long long labels = 0, rows = 0;
    std::string defect;

    for (const auto& row : t["types"]) {
        const std::string type = row["type"].get<std::string>();
        const char tag = type[0];
        const int n = row["rank"].get<int>();
        if (json_ints(row["special"]) != expected_special(tag, n)) {
            defect = type + ": wrong special set";
            break;
        }
        for (const auto& r : row["rows"]) {
            ++rows;
            const int p = r["alpha"].get<int>();
            if (json_ints(r["symplectic"]) != expected_symplectic(tag, n, p)) {
                defect = type + " alpha " + std::to_string(p) + ": wrong symplectic set";
                break;
            }
            if (tag == 'E') continue;  // E6/E7 pinned below as full rows
            for (int w = 1; w <= n; ++w) {
                ++labels;
                auto got = parse_rational(r["labels"][w - 1].get<std::string>());
                if (!got || *got != expected_label(tag, n, p, w)) {
                    defect = type + " alpha " + std::to_string(p) + " node " + std::to_string(w) +
                             ": label " + r["labels"][w - 1].get<std::string>();
                    break;
                }
            }
            if (!defect.empty()) break;
        }
        if (!defect.empty()) break;
    }

    if (defect.empty() && picture_row(t, "E6", 6) != "2/3,4/3,2,1,5/3,4/3")
        defect = "E6 row: " + picture_row(t, "E6", 6);
    if (defect.empty() && picture_row(t, "E6", 1) != "4/3,5/3,2,1,4/3,2/3")
        defect = "E6 row from node 1 (mirror of the node-6 row): " + picture_row(t, "E6", 1);
    if (defect.empty() && picture_row(t, "E7", 7) != "1,2,3,3/2,5/2,2,3/2")
        defect = "E7 row: " + picture_row(t, "E7", 7);

    double dt = seconds_since(t0);
    if (!defect.empty()) {
        report(1, false, defect);
        return;
    }
    std::ostringstream d;
    d << "table ranks <= 8: " << rows << " rows, " << labels
      << " labels equal the closed forms, E6/E7 rows verbatim, " << dt << " s";
    report(1, dt < 1.0, d.str());
}

void criterion2() {
    long long checked = 0;
    std::string defect;
    for (const auto& t : all_simple_types(8)) {
        auto d = build_diagram({t});
        std::vector<int> got;
        for (int v : special_nodes(*d, 0)) got.push_back(v + 1);
        ++checked;
        if (got != expected_special(t.tag, t.rank)) {
            defect = to_string(t) + ": wrong special nodes";
            break;
        }
    }
    if (!defect.empty()) {
        report(2, false, defect);
        return;
    }
    report(2, true,
           "special nodes of all " + std::to_string(checked) +
               " types of rank <= 8 match the classification (A all, B first, C last, D "
               "extremal, E6 {1,6}, E7 {7}, E8/F4/G2 none)");
}

void criterion3() {
    // every multiset of simple types with total rank <= 4, against the
    // Weyl-group oracle
    std::vector<SimpleType> small = all_simple_types(4);
    long long diagrams = 0;
    std::string defect;

    std::vector<SimpleType> stack;
    std::function<void(std::size_t, int)> sweep = [&](std::size_t from, int budget) {
        if (!defect.empty()) return;
        if (!stack.empty()) {
            auto d = build_diagram(stack);
            ++diagrams;
            Perm tau = opposition_involution(*d);
            auto oracle = oppinv_bruteforce_oracle(*d, 4);
            if (!oracle || *oracle != tau) {
                std::string name;
                for (const auto& t : stack) name += to_string(t) + " ";
                defect = "oracle mismatch on " + name;
                return;
            }
        }
        for (std::size_t i = from; i < small.size(); ++i) {
            if (small[i].rank > budget) continue;
            stack.push_back(small[i]);
            sweep(i, budget - small[i].rank);
            stack.pop_back();
        }
    };
    sweep(0, 4);

    // nontriviality classification for single types of rank <= 8
    long long singles = 0;
    if (defect.empty()) {
        for (const auto& t : all_simple_types(8)) {
            auto d = build_diagram({t});
            bool nontrivial = !opposition_involution(*d).is_identity();
            bool expected = (t.tag == 'A' && t.rank >= 2) || (t.tag == 'D' && t.rank % 2 == 1) ||
                            (t.tag == 'E' && t.rank == 6);
            ++singles;
            if (nontrivial != expected) {
                defect = to_string(t) + ": wrong nontriviality";
                break;
            }
        }
    }
    if (!defect.empty()) {
        report(3, false, defect);
        return;
    }
    report(3, true,
           "closed-form involution equals the Weyl oracle on all " + std::to_string(diagrams) +
               " diagrams of total rank <= 4; nontriviality (A>=2, D odd, E6) holds for all " +
               std::to_string(singles) + " types of rank <= 8");
}

// Criteria 4, 6, 7 share one sweep over every diagram occurring in the
// default enumeration family (group order <= 24, rank <= 4, types ABCD,
// <= 3 components), deduplicated across frames.
void criteria_4_6_7() {
    InstanceBounds bounds;
    std::set<std::string> seen;
    long long diagrams = 0, in_hypothesis = 0, deligne_runs = 0;
    std::string defect4, defect6, defect7;

    // Everything checked below depends on the acting group only through its
    // element set (equivariance under the generators equals equivariance
    // under their closure, and the covers of two generating tuples of one
    // group correspond bijectively), so diagrams are deduplicated by
    // (types, group elements, mu) rather than by generator tuple.
    auto diagram_key = [](const EquivariantDiagram& e, const std::vector<int>& mu) {
        std::string key;
        for (const auto& c : e.diagram.comps) key += to_string(c.type) + ",";
        key += "|";
        std::vector<std::string> elems;
        for (const auto& g : e.group.elements) elems.push_back(to_cycle_string(g));
        std::sort(elems.begin(), elems.end());
        for (const auto& s : elems) key += s + ",";
        key += "|";
        for (int v : mu) key += std::to_string(v) + ",";
        return key;
    };

    enumerate_frames(bounds, [&](const InstanceFrame& fr) {
        for (int side = 0; side < 2; ++side) {
            const SimpleType type = side ? fr.type2 : fr.type1;
            const auto& gens = side ? fr.gens2 : fr.gens1;
            auto diagram = build_diagram(std::vector<SimpleType>(fr.m, type));
            auto e = make_equivariant(*diagram, gens);
            if (!e) continue;

            // all mu choices: at most one special node per component
            std::vector<std::vector<int>> options(fr.m);
            for (int c = 0; c < fr.m; ++c) {
                options[c].push_back(-1);
                for (int v : special_nodes(*diagram, c)) options[c].push_back(v);
            }
            std::vector<int> pick(fr.m, 0);
            while (true) {
                std::vector<int> mu;
                for (int c = 0; c < fr.m; ++c)
                    if (options[c][pick[c]] >= 0) mu.push_back(options[c][pick[c]]);

                if (seen.insert(diagram_key(*e, mu)).second) {
                    ++diagrams;
                    DeligneDynkin d{*e, mu};
                    if (is_irreducible(d) && is_populated(d) && is_symplectic(d)) {
                        ++in_hypothesis;
                        auto aut = aut_id(d);
                        auto predicted = predicted_aut_count(d);
                        if (defect4.empty() &&
                            (!aut || !predicted ||
                             static_cast<int>(aut->size()) != *predicted)) {
                            defect4 = "count mismatch on " + diagram_key(*e, mu);
                        }
                        if (defect6.empty() && !locally_same_type_holds(d))
                            defect6 = "locally-same-type fails on " + diagram_key(*e, mu);
                        if (defect6.empty() && !locally_same_aut_holds(d))
                            defect6 = "locally-same-aut fails on " + diagram_key(*e, mu);

                        for (const auto& F : enumerate_covers(d.base)) {
                            for (const auto& phi : enumerate_phis(d, F)) {
                                ++deligne_runs;
                                if (!defect7.empty()) continue;
                                auto res = deligne_construct(d, F, phi, 1);
                                if (auto* err = std::get_if<DeligneError>(&res)) {
                                    defect7 = "construction failed (" + err->message + ") on " +
                                              diagram_key(*e, mu);
                                    continue;
                                }
                                const auto& rep = std::get<DeligneReport>(res);
                                if (!is_pure(module_profile(rep.w_f), Rat(1)))
                                    defect7 = "W_F not pure of weight 1 on " + diagram_key(*e, mu);
                                else if (!is_classical(rep.v_prime))
                                    defect7 = "V' not classical on " + diagram_key(*e, mu);
                                else if (check_conjugation_symmetry(rep.v_prime))
                                    defect7 = "V' not symmetric on " + diagram_key(*e, mu);
                                else if (rep.dim_v_prime % 2 != 0 ||
                                         rep.abelian_dim * 2 != rep.dim_v_prime)
                                    defect7 = "V' dimension odd on " + diagram_key(*e, mu);
                                else if (!cm_rank_one(rep.f) || !cm_rank_one(rep.f_s) ||
                                         !cm_rank_one(rep.w_f))
                                    defect7 = "cm_rank_one fails on " + diagram_key(*e, mu);
                                for (const auto& entry : rep.v_prime.entries) {
                                    if (!defect7.empty()) break;
                                    bool ten = entry.p == Rat(1) && entry.q == Rat(0);
                                    bool zeroone = entry.p == Rat(0) && entry.q == Rat(1);
                                    if (!ten && !zeroone)
                                        defect7 = "V' type not {(1,0),(0,1)} on " +
                                                  diagram_key(*e, mu);
                                }
                            }
                        }
                    }
                }

                int c = 0;
                while (c < fr.m && ++pick[c] == static_cast<int>(options[c].size())) {
                    pick[c] = 0;
                    ++c;
                }
                if (c == fr.m) break;
            }
        }
        return true;
    });

    std::ostringstream base;
    base << in_hypothesis << " irreducible symplectic populated diagrams out of " << diagrams
         << " in the family";
    report(4, defect4.empty(),
           defect4.empty() ? "|Aut_id| equals the case-table prediction on " + base.str()
                           : defect4);
    report(6, defect6.empty(),
           defect6.empty() ? "locally-same-type and locally-same-aut hold on " + base.str()
                           : defect6);
    std::ostringstream d7;
    d7 << deligne_runs << " (cover, phi) pipeline runs over " << base.str()
       << ": W_F pure weight 1, V' classical {(1,0),(0,1)} and even, cm_rank_one for "
          "F/F_S/W_F";
    report(7, defect7.empty(), defect7.empty() ? d7.str() : defect7);
}

void criterion5() {
    auto t0 = Clock::now();
    CampaignOptions opts;  // default bounds: order <= 24, rank <= 4, ABCD, <= 3 components
    CampaignResult r = run_campaign(opts);
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << r.frames << " frames, " << r.instances << " instances: pass " << r.pass << ", vacuous "
      << r.vacuous << ", out-of-hypothesis " << r.out_of_hypothesis << ", counterexamples "
      << r.counterexamples.size() << ", " << dt << " s";
    bool ok = r.counterexamples.empty() && r.pass > 0 && r.instances > 0;
    if (!ok && !r.counterexamples.empty())
        d << "; first: " << r.counterexamples.front().detail;
    report(5, ok, d.str());
}

void criterion8() {
    // dimension formula against brute-force root enumeration
    std::string defect;
    for (const auto& t : all_simple_types(8)) {
        if (root_count_bruteforce(t) + t.rank != lie_dim(t)) {
            defect = to_string(t) + ": dimension formula disagrees with the root count";
            break;
        }
    }

    // the worked D4 example
    if (defect.empty()) {
        auto d4 = make_datum({{'D', 4}}, 0);
        TannakianObject v{*d4, 28};
        if (adjoint_object(v).dimension != 28) defect = "D4 adjoint object dimension is not 28";
    }

    // hyperadjoint stabilizes by step 2 on every datum with <= 4 components
    // of rank <= 8 and center rank <= 3
    long long data = 0;
    if (defect.empty()) {
        std::vector<SimpleType> types = all_simple_types(8);
        std::vector<SimpleType> stack;
        std::function<void(std::size_t)> sweep = [&](std::size_t from) {
            if (!defect.empty()) return;
            for (int center = 0; center <= 3; ++center) {
                auto datum = make_datum(stack, center);
                long long dim = center;
                for (const auto& t : stack) dim += lie_dim(t);
                if (is_trivial(*datum)) dim = 0;
                TannakianObject v{*datum, dim};
                ++data;
                auto res = hyperadjoint(v);
                if (auto* err = std::get_if<std::string>(&res)) {
                    defect = "hyperadjoint error on " + to_string(*datum) + ": " + *err;
                    return;
                }
                const auto& ha = std::get<HyperadjointResult>(res);
                if (ha.index > 2) {
                    defect = "index " + std::to_string(ha.index) + " on " + to_string(*datum);
                    return;
                }
            }
            if (stack.size() == 4) return;
            for (std::size_t i = from; i < types.size(); ++i) {
                stack.push_back(types[i]);
                sweep(i);
                stack.pop_back();
                if (!defect.empty()) return;
            }
        };
        sweep(0);
    }

    if (!defect.empty()) {
        report(8, false, defect);
        return;
    }
    std::ostringstream d;
    d << "root counts match lie_dim for all 33 types of rank <= 8; D4 adjoint object has "
         "dimension 28; stabilization index <= 2 on all "
      << data << " reductive data (<= 4 components, center <= 3)";
    report(8, true, d.str());
}

void criterion9() {
    auto t0 = Clock::now();
    Json g = goursat_json(12);
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << g["subgroups"].get<long long>() << " subdirect subgroups over "
      << g["pairs"].get<long long>()
      << " zoo pairs with |G| <= 12, all decomposed and rebuilt exactly, " << dt << " s";
    bool ok = g["ok"].get<bool>() && dt < 60.0;
    if (!g["failures"].empty())
        d << "; first failure: " << g["failures"][0]["error"].get<std::string>();
    report(9, ok, d.str());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion10() {
    const std::string cli = DELDYN_CLI_PATH;
    const std::string args =
        " verify-local-global --max-order 6 --max-rank 3 --max-components 2 --format json";
    int rc1 = std::system((cli + args + " > acc_run1.json 2>/dev/null").c_str());
    int rc2 = std::system((cli + args + " > acc_run2.json 2>/dev/null").c_str());
    int rc3 = std::system((cli + " goursat --format json > acc_run3.json 2>/dev/null").c_str());
    int rc4 = std::system((cli + " goursat --format json > acc_run4.json 2>/dev/null").c_str());
    std::string a = slurp("acc_run1.json"), b = slurp("acc_run2.json");
    std::string c = slurp("acc_run3.json"), d = slurp("acc_run4.json");
    bool ok = rc1 == 0 && rc2 == 0 && rc3 == 0 && rc4 == 0 && !a.empty() && a == b &&
              !c.empty() && c == d;
    std::ostringstream msg;
    if (ok)
        msg << "consecutive campaign runs are byte-identical (verify-local-global: " << a.size()
            << " bytes, goursat: " << c.size() << " bytes)";
    else
        msg << "runs differ or failed (exit " << rc1 << "/" << rc2 << "/" << rc3 << "/" << rc4
            << ", sizes " << a.size() << "/" << b.size() << "/" << c.size() << "/" << d.size()
            << ")";
    report(10, ok, msg.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criteria_4_6_7();
    criterion5();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%s\n", g_all_pass ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED");
    return g_all_pass ? 0 : 1;
}
