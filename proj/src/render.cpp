#include "deldyn/render.hpp"

#include <sstream>

namespace deldyn {

namespace {

std::string join_ints(const Json& arr, const char* sep = " ") {
    std::ostringstream out;
    bool first = true;
    for (const auto& e : arr) {
        if (!first) out << sep;
        out << e.get<long long>();
        first = false;
    }
    return out.str();
}

std::string or_dash(const Json& j) { return j.is_null() ? "-" : j.get<std::string>(); }

std::string yesno(bool b) { return b ? "yes" : "no"; }

// "(p,q)^dim (p,q)^dim ..." for a Hodge profile array.
std::string profile_string(const Json& entries) {
    std::ostringstream out;
    bool first = true;
    for (const auto& e : entries) {
        if (!first) out << " ";
        out << "(" << e["p"].get<std::string>() << "," << e["q"].get<std::string>() << ")^"
            << e["dim"].get<long long>();
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

}  // namespace

std::string table_text(const Json& j) {
    std::ostringstream out;
    for (const auto& row : j["types"]) {
        out << row["type"].get<std::string>();
        const auto& special = row["special"];
        if (special.empty()) {
            out << "  (no special nodes)\n";
            continue;
        }
        out << "  special: " << join_ints(special) << "\n";
        std::vector<int> order;
        for (const auto& e : row["picture_order"]) order.push_back(e.get<int>());
        bool shuffled = false;
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] != static_cast<int>(i) + 1) shuffled = true;
        if (shuffled) out << "  drawn order: " << join_ints(row["picture_order"]) << "\n";
        for (const auto& r : row["rows"]) {
            out << "  alpha " << r["alpha"].get<int>() << ":";
            std::vector<bool> sympl(order.size() + 1, false);
            for (const auto& s : r["symplectic"]) sympl[s.get<int>()] = true;
            for (int node : order) {
                const std::string label = r["labels"][node - 1].get<std::string>();
                out << " " << (sympl[node] ? "[" + label + "]" : label);
            }
            out << "\n";
        }
    }
    return out.str();
}

std::string classify_text(const Json& j) {
    std::ostringstream out;
    out << "components:";
    for (const auto& c : j["components"]) out << " " << c.get<std::string>();
    out << "\n";
    out << "generators:";
    if (j["generators"].empty()) out << " (none)";
    for (const auto& g : j["generators"]) out << " " << g.get<std::string>();
    out << "\n";
    out << "mu: " << (j["mu"].empty() ? "(empty)" : join_ints(j["mu"])) << "\n";
    if (!j["valid"].get<bool>()) {
        out << "valid: no (" << j["error"].get<std::string>() << ")\n";
        return out.str();
    }
    out << "valid: yes\n";
    out << "irreducible: " << yesno(j["irreducible"].get<bool>()) << "\n";
    out << "populated: " << yesno(j["populated"].get<bool>()) << "\n";
    out << "symplectic: " << yesno(j["symplectic"].get<bool>()) << "\n";
    out << "type: " << (j["type"].is_null() ? "-" : j["type"].get<std::string>()) << "\n";
    out << "S:" << (j["symplectic_set"].empty() ? " (empty)" : " " + join_ints(j["symplectic_set"]))
        << "\n";
    out << "U: " << (j["u_set"].is_null() ? "-" : join_ints(j["u_set"])) << "\n";
    out << "|Aut_id|: ";
    if (j["aut_id_count"].is_null())
        out << "-";
    else
        out << j["aut_id_count"].get<int>();
    out << "\n";
    out << "pieces: " << j["pieces"].size() << "\n";
    int k = 0;
    for (const auto& p : j["pieces"]) {
        out << "  piece " << ++k << ": components " << join_ints(p["components"]) << ", type "
            << (p["type"].is_null() ? "-" : p["type"].get<std::string>()) << ", |Aut_id| ";
        if (p["aut_id_count"].is_null())
            out << "-";
        else
            out << p["aut_id_count"].get<int>();
        out << "\n";
    }
    return out.str();
}

std::string special_text(const Json& j) {
    std::ostringstream out;
    out << j["type"].get<std::string>() << ": special nodes "
        << (j["special"].empty() ? "(none)" : join_ints(j["special"])) << "\n";
    return out.str();
}

std::string oppinv_text(const Json& j) {
    std::ostringstream out;
    out << j["type"].get<std::string>() << ": tau = " << j["tau"].get<std::string>();
    if (j["trivial"].get<bool>()) out << " (identity)";
    out << "\n";
    if (j["oracle_checked"].get<bool>())
        out << "oracle: " << (j["oracle_matches"].get<bool>() ? "match" : "MISMATCH") << "\n";
    else
        out << "oracle: skipped (rank above brute-force cap)\n";
    return out.str();
}

std::string isom_text(const Json& j) {
    std::ostringstream out;
    if (!j["local"].is_null())
        out << "local: " << j["local"].get<std::string>() << " (order "
            << j["local_order"].get<int>() << ")\n";
    out << "component maps: " << j["maps"].size() << "\n";
    for (const auto& m : j["maps"]) {
        out << "  " << join_ints(m["map"]) << ": ";
        if (m["witness"].is_null())
            out << "no witness";
        else
            out << "witness " << m["witness"].get<std::string>()
                << (m["verified"].get<bool>() ? " (verified)" : " (VERIFY FAILED)");
        out << "\n";
    }
    out << "isomorphic: " << yesno(j["found"].get<bool>()) << "\n";
    return out.str();
}

std::string campaign_text(const Json& j) {
    std::ostringstream out;
    const auto& b = j["bounds"];
    out << "bounds: group order <= " << b["max_group_order"].get<long long>() << ", rank <= "
        << b["max_rank"].get<int>() << ", types " << b["types"].get<std::string>()
        << ", components <= " << b["max_components"].get<int>() << "\n";
    out << "frames: " << j["frames"].get<long long>() << "\n";
    out << "instances: " << j["instances"].get<long long>() << "\n";
    out << "pass: " << j["pass"].get<long long>() << "\n";
    out << "vacuous: " << j["vacuous"].get<long long>() << "\n";
    out << "out of hypothesis: " << j["out_of_hypothesis"].get<long long>() << "\n";
    out << "pass by type:\n";
    for (const auto& [type, count] : j["pass_by_type"].items())
        out << "  " << type << ": " << count.get<long long>() << "\n";
    out << "counterexamples: " << j["counterexamples"].size() << "\n";
    for (const auto& ce : j["counterexamples"]) {
        out << "  d1: " << ce["d1"].dump() << "\n";
        out << "  d2: " << ce["d2"].dump() << "\n";
        out << "  map: " << join_ints(ce["component_map"]) << "\n";
        out << "  detail: " << ce["detail"].get<std::string>() << "\n";
    }
    out << (j["ok"].get<bool>() ? "OK" : "FAILED") << "\n";
    return out.str();
}

std::string deligne_text(const Json& j) {
    std::ostringstream out;
    out << "runs: " << j["count"].get<int>() << " (mode " << j["mode"].get<std::string>()
        << ", multiplicity " << j["multiplicity"].get<long long>() << ")\n";
    int k = 0;
    for (const auto& run : j["runs"]) {
        out << "run " << ++k << ": cover";
        if (run["cover"].empty()) out << " (no generators)";
        for (const auto& g : run["cover"]) out << " " << g.get<std::string>();
        out << "; phi " << (run["phi"].empty() ? "(empty)" : join_ints(run["phi"])) << "\n";
        if (run.contains("internal_error")) {
            out << "  INTERNAL ERROR: " << run["internal_error"].get<std::string>() << "\n";
            continue;
        }
        out << "  S: " << (run["s_nodes"].empty() ? "(empty)" : join_ints(run["s_nodes"]));
        out << "; r:";
        for (const auto& r : run["r"]) out << " " << or_dash(r);
        out << "\n";
        out << "  W_F: rank 1 at " << run["w_points"].size() << " points (pure weight 1)\n";
        out << "  V': " << profile_string(run["v_prime"]) << "\n";
        out << "  dim V' = " << run["dim_v_prime"].get<long long>()
            << ", abelian dim = " << run["abelian_dim"].get<long long>() << "\n";
    }
    return out.str();
}

std::string hyperadjoint_text(const Json& j) {
    std::ostringstream out;
    out << "input: " << j["input"]["acting"].get<std::string>() << " dim "
        << j["input"]["dimension"].get<long long>() << "\n";
    out << "chain:";
    bool first = true;
    for (const auto& s : j["chain"]) {
        if (!first) out << " ->";
        out << " " << s["acting"].get<std::string>() << " dim " << s["dimension"].get<long long>();
        first = false;
    }
    out << "\n";
    if (j.contains("internal_error")) {
        out << "INTERNAL ERROR: " << j["internal_error"].get<std::string>() << "\n";
        return out.str();
    }
    out << "hyperadjoint: " << j["hyperadjoint"]["acting"].get<std::string>() << " dim "
        << j["hyperadjoint"]["dimension"].get<long long>() << " (index " << j["index"].get<int>()
        << ")\n";
    return out.str();
}

std::string goursat_text(const Json& j) {
    std::ostringstream out;
    out << "groups (" << j["groups"].size() << "):";
    for (const auto& g : j["groups"]) out << " " << g.get<std::string>();
    out << "\n";
    out << "pairs: " << j["pairs"].get<long long>() << "\n";
    out << "subdirect subgroups: " << j["subgroups"].get<long long>() << "\n";
    out << "failures: " << j["failures"].size() << "\n";
    for (const auto& f : j["failures"])
        out << "  " << f["g1"].get<std::string>() << " x " << f["g2"].get<std::string>() << ": "
            << f["error"].get<std::string>() << "\n";
    out << (j["ok"].get<bool>() ? "OK" : "FAILED") << "\n";
    return out.str();
}

}  // namespace deldyn
