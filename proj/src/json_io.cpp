#include "deldyn/json_io.hpp"

#include "deldyn/diagram.hpp"
#include "deldyn/rational.hpp"

#include <algorithm>
#include <cstdint>

namespace deldyn {

namespace {

// nlohmann prefixes messages with "[json.exception.parse_error.101] "; the
// rest already names the line and column.
std::string strip_exception_tag(const std::string& what) {
    if (!what.empty() && what.front() == '[') {
        auto close = what.find("] ");
        if (close != std::string::npos) return what.substr(close + 2);
    }
    return what;
}

Json ids_1based(const std::vector<int>& v) {
    Json a = Json::array();
    for (int x : v) a.push_back(x + 1);
    return a;
}

Json strings(const std::vector<std::string>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

Json file_json(const DiagramFile& f) {
    Json j;
    Json comps = Json::array();
    for (const auto& t : f.components) comps.push_back(to_string(t));
    j["components"] = comps;
    j["generators"] = strings(f.generators);
    Json mu = Json::array();
    for (int x : f.mu) mu.push_back(x);
    j["mu"] = mu;
    if (f.cover_generators) {
        Json c;
        c["generators"] = strings(*f.cover_generators);
        j["cover"] = c;
    }
    if (f.phi) {
        Json p = Json::array();
        for (int x : *f.phi) p.push_back(x);
        j["phi"] = p;
    }
    return j;
}

bool int_array(const Json& j, std::vector<int>& out) {
    if (!j.is_array()) return false;
    out.clear();
    for (const auto& e : j) {
        if (!e.is_number_integer()) return false;
        out.push_back(e.get<int>());
    }
    return true;
}

bool string_array(const Json& j, std::vector<std::string>& out) {
    if (!j.is_array()) return false;
    out.clear();
    for (const auto& e : j) {
        if (!e.is_string()) return false;
        out.push_back(e.get<std::string>());
    }
    return true;
}

// 1-based ids from the file checked against [1, n] and converted; dupes are
// left for the semantic validators to call out.
std::optional<std::string> to_zero_based(const std::string& field, const std::vector<int>& in,
                                         int n, std::vector<int>& out) {
    out.clear();
    for (int x : in) {
        if (x < 1 || x > n)
            return field + ": id " + std::to_string(x) + " out of range 1.." + std::to_string(n);
        out.push_back(x - 1);
    }
    std::sort(out.begin(), out.end());
    return std::nullopt;
}

Json profile_json(const FractionalPreHodge& h) {
    Json a = Json::array();
    for (const auto& e : h.entries) {
        Json x;
        x["p"] = to_string(e.p);
        x["q"] = to_string(e.q);
        x["dim"] = e.dim;
        a.push_back(x);
    }
    return a;
}

Json module_json(const EtaleModule& m) {
    Json j;
    j["points"] = m.n_points;
    Json bd = Json::array();
    for (const auto& [p, q] : m.bideg) {
        Json e = Json::array();
        e.push_back(to_string(p));
        e.push_back(to_string(q));
        bd.push_back(e);
    }
    j["bidegrees"] = bd;
    Json rk = Json::array();
    for (long long r : m.rank) rk.push_back(r);
    j["ranks"] = rk;
    j["conj"] = m.conj ? Json(to_cycle_string(*m.conj)) : Json(nullptr);
    return j;
}

// One pipeline run flattened into a JSON record.
Json deligne_run_json(const QuadraticCover& F, const PartialCMType& phi,
                      const DeligneReport& rep) {
    Json j;
    Json cg = Json::array();
    for (const auto& g : F.gens) cg.push_back(to_cycle_string(g));
    j["cover"] = cg;
    j["phi"] = ids_1based(phi.phi);
    j["s_nodes"] = ids_1based(rep.s_nodes);
    Json rv = Json::array();
    for (const auto& r : rep.r) rv.push_back(r ? Json(to_string(*r)) : Json(nullptr));
    j["r"] = rv;
    Json vs = Json::array();
    for (const auto& v : rep.v_of_s) vs.push_back(profile_json(v));
    j["v"] = vs;
    j["f"] = module_json(rep.f);
    j["f_s"] = module_json(rep.f_s);
    j["w_f"] = module_json(rep.w_f);
    Json wp = Json::array();
    for (const auto& [pt, si] : rep.w_points) {
        Json e;
        e["point"] = pt + 1;
        e["s_node"] = rep.s_nodes[si] + 1;
        wp.push_back(e);
    }
    j["w_points"] = wp;
    j["v_prime"] = profile_json(rep.v_prime);
    j["dim_v_prime"] = rep.dim_v_prime;
    j["abelian_dim"] = rep.abelian_dim;
    j["multiplicity"] = rep.multiplicity;
    return j;
}

// E-type diagrams are drawn with node 2 below the chain 1-3-4-5-...; the
// drawn reading order interleaves it after node 4.
std::vector<int> picture_order(const SimpleType& t) {
    std::vector<int> order;
    if (t.tag == 'E') {
        order = {1, 3, 4, 2};
        for (int i = 5; i <= t.rank; ++i) order.push_back(i);
    } else {
        for (int i = 1; i <= t.rank; ++i) order.push_back(i);
    }
    return order;
}

}  // namespace

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string serialize_diagram_file(const DiagramFile& f) { return dump_json(file_json(f)); }

DiagramFile to_diagram_file(const DeligneDynkin& d) {
    DiagramFile f;
    for (const auto& c : d.base.diagram.comps) f.components.push_back(c.type);
    for (const auto& g : d.base.gens) f.generators.push_back(to_cycle_string(g));
    for (int x : d.mu) f.mu.push_back(x + 1);
    return f;
}

std::variant<ParsedDiagram, std::string> parse_diagram_file(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        return strip_exception_tag(e.what());
    }
    if (!j.is_object()) return std::string("top level must be a JSON object");

    for (const auto& [key, _] : j.items()) {
        if (key != "components" && key != "generators" && key != "mu" && key != "cover" &&
            key != "phi")
            return "unknown key '" + key + "'";
    }
    if (!j.contains("components")) return std::string("missing key 'components'");
    if (!j.contains("generators")) return std::string("missing key 'generators'");
    if (!j.contains("mu")) return std::string("missing key 'mu'");

    ParsedDiagram out;

    std::vector<std::string> comp_names;
    if (!string_array(j["components"], comp_names))
        return std::string("components: expected an array of type names");
    if (comp_names.empty()) return std::string("components: must be nonempty");
    for (const auto& name : comp_names) {
        auto t = parse_type(name);
        if (!t) return "components: invalid type '" + name + "'";
        out.file.components.push_back(*t);
    }
    auto diagram = build_diagram(out.file.components);
    if (!diagram) return std::string("components: not a valid finite diagram");
    const int n = diagram->total_nodes;
    const int m = diagram->comp_count();

    if (!string_array(j["generators"], out.file.generators))
        return std::string("generators: expected an array of cycle strings");
    std::vector<Perm> gens;
    for (const auto& s : out.file.generators) {
        auto p = parse_cycles(s, n);
        if (!p)
            return "generators: invalid cycle notation '" + s + "' over " + std::to_string(n) +
                   " nodes";
        auto single = make_equivariant(*diagram, {*p});
        if (!single) return "generators: '" + s + "' is not a diagram automorphism";
        gens.push_back(*p);
    }
    auto e = make_equivariant(*diagram, gens);
    if (!e) return std::string("generators: not diagram automorphisms");

    if (!int_array(j["mu"], out.file.mu)) return std::string("mu: expected an array of node ids");
    std::vector<int> mu0;
    if (auto err = to_zero_based("mu", out.file.mu, n, mu0)) return *err;
    out.d = DeligneDynkin{*e, mu0};
    if (auto err = validate(out.d)) return "mu: " + *err;

    if (j.contains("cover")) {
        const Json& cj = j["cover"];
        if (!cj.is_object() || !cj.contains("generators") || cj.size() != 1)
            return std::string("cover: expected an object with a 'generators' array");
        std::vector<std::string> cover_strs;
        if (!string_array(cj["generators"], cover_strs))
            return std::string("cover: generators must be an array of cycle strings");
        QuadraticCover F;
        for (const auto& s : cover_strs) {
            auto p = parse_cycles(s, 2 * m);
            if (!p)
                return "cover: invalid cycle notation '" + s + "' over " + std::to_string(2 * m) +
                       " points";
            F.gens.push_back(*p);
        }
        if (auto err = validate_cover(out.d.base, F)) return "cover: " + *err;
        out.file.cover_generators = cover_strs;
        out.cover = F;
    }

    if (j.contains("phi")) {
        if (!out.cover) return std::string("phi: requires a cover");
        std::vector<int> phi_file;
        if (!int_array(j["phi"], phi_file))
            return std::string("phi: expected an array of cover point ids");
        PartialCMType phi;
        if (auto err = to_zero_based("phi", phi_file, 2 * m, phi.phi)) return *err;
        if (auto err = validate_phi(out.d, *out.cover, phi)) return "phi: " + *err;
        out.file.phi = phi_file;
        std::sort(out.file.phi->begin(), out.file.phi->end());
        out.phi = phi;
    }

    return out;
}

// --- report builders -------------------------------------------------------

Json table_json(int max_rank) {
    Json types = Json::array();
    for (char tag : {'A', 'B', 'C', 'D', 'E', 'F', 'G'}) {
        for (int rank = 1; rank <= max_rank; ++rank) {
            SimpleType t{tag, rank};
            if (!valid_type(t)) continue;
            auto d = build_diagram({t});
            Json row;
            row["type"] = to_string(t);
            row["rank"] = rank;
            Json order = Json::array();
            for (int i : picture_order(t)) order.push_back(i);
            row["picture_order"] = order;
            auto spec = special_nodes(*d, 0);
            row["special"] = ids_1based(spec);
            Json rows = Json::array();
            for (int alpha : spec) {
                Json r;
                r["alpha"] = alpha + 1;
                Json labels = Json::array();
                for (int omega = 0; omega < d->total_nodes; ++omega)
                    labels.push_back(to_string(*pairing(*d, alpha, omega)));
                r["labels"] = labels;
                r["symplectic"] = ids_1based(symplectic_nodes(*d, alpha));
                rows.push_back(r);
            }
            row["rows"] = rows;
            types.push_back(row);
        }
    }
    Json out;
    out["max_rank"] = max_rank;
    out["types"] = types;
    return out;
}

Json classify_json(const DeligneDynkin& d) {
    Json out = file_json(to_diagram_file(d));
    auto err = validate(d);
    out["valid"] = !err.has_value();
    if (err) {
        out["error"] = *err;
        return out;
    }
    out["irreducible"] = is_irreducible(d);
    out["populated"] = is_populated(d);
    out["symplectic"] = is_symplectic(d);
    out["symplectic_set"] = ids_1based(symplectic_set(d));
    auto t = type_of(d);
    out["type"] = t ? Json(to_string(*t)) : Json(nullptr);
    auto u = u_set(d);
    out["u_set"] = u ? ids_1based(*u) : Json(nullptr);
    auto aut = aut_id(d);
    out["aut_id_count"] = aut ? Json(static_cast<int>(aut->size())) : Json(nullptr);

    Json pieces = Json::array();
    auto pcs = local_components(d, d.base.gens);
    if (pcs) {
        for (const auto& p : *pcs) {
            Json pj;
            pj["components"] = ids_1based(p.comps);
            pj["nodes"] = ids_1based(p.nodes);
            auto pt = type_of(p.piece);
            pj["type"] = pt ? Json(to_string(*pt)) : Json(nullptr);
            auto pa = aut_id(p.piece);
            pj["aut_id_count"] = pa ? Json(static_cast<int>(pa->size())) : Json(nullptr);
            pieces.push_back(pj);
        }
    }
    out["pieces"] = pieces;
    return out;
}

Json special_json(const SimpleType& t) {
    auto d = build_diagram({t});
    Json out;
    out["type"] = to_string(t);
    out["nodes"] = d->total_nodes;
    out["special"] = ids_1based(special_nodes(*d, 0));
    return out;
}

Json oppinv_json(const SimpleType& t) {
    auto d = build_diagram({t});
    Perm tau = opposition_involution(*d);
    Json out;
    out["type"] = to_string(t);
    out["tau"] = to_cycle_string(tau);
    out["trivial"] = tau.is_identity();
    auto oracle = oppinv_bruteforce_oracle(*d);
    out["oracle_checked"] = oracle.has_value();
    out["oracle_matches"] = oracle ? Json(*oracle == tau) : Json(nullptr);
    return out;
}

std::variant<Json, std::string> isom_json(const DeligneDynkin& d1, const DeligneDynkin& d2,
                                          const std::optional<Perm>& local) {
    DeligneDynkin r1 = d1, r2 = d2;
    Json out;
    out["local"] = nullptr;
    if (local) {
        auto joint = joint_group(d1.base, d2.base);
        if (!joint)
            return std::string("the two generator lists do not present the same group");
        const int n1 = d1.base.diagram.total_nodes;
        std::optional<Perm> element;
        for (const auto& g : joint->elements) {
            if (split_perm(g, n1).first == *local) {
                element = g;
                break;
            }
        }
        if (!element)
            return std::string("--local: permutation is not in the acting group of the first "
                               "diagram");
        std::vector<Perm> cyclic;
        Perm p(joint->degree);
        do {
            cyclic.push_back(p);
            p = compose(*element, p);
        } while (!p.is_identity());
        std::tie(r1, r2) = restrict_pair(d1, d2, cyclic);
        out["local"] = to_cycle_string(*local);
        out["local_order"] = static_cast<int>(cyclic.size());
    }

    Json maps = Json::array();
    bool found = false;
    for (const auto& f : equivariant_component_maps(r1.base, r2.base)) {
        Json mj;
        mj["map"] = ids_1based(f);
        auto w = decide_isom_oracle(r1, r2, f);
        if (w) {
            found = true;
            mj["witness"] = to_cycle_string(*w);
            auto defect = verify_isom(r1, r2, f, *w);
            mj["verified"] = !defect.has_value();
        } else {
            mj["witness"] = nullptr;
            mj["verified"] = nullptr;
        }
        maps.push_back(mj);
    }
    out["maps"] = maps;
    out["found"] = found;
    return out;
}

Json campaign_json(const CampaignResult& r, const InstanceBounds& b) {
    Json out;
    Json bounds;
    bounds["max_group_order"] = static_cast<std::int64_t>(b.max_group_order);
    bounds["max_rank"] = b.max_rank;
    bounds["types"] = b.tags;
    bounds["max_components"] = b.max_components;
    out["bounds"] = bounds;
    out["frames"] = r.frames;
    out["instances"] = r.instances;
    out["pass"] = r.pass;
    out["vacuous"] = r.vacuous;
    out["out_of_hypothesis"] = r.out_of_hypothesis;
    Json by_type = Json::object();
    for (const auto& [type, count] : r.pass_by_type) by_type[type] = count;
    out["pass_by_type"] = by_type;
    Json ces = Json::array();
    for (const auto& ce : r.counterexamples) {
        Json c;
        c["d1"] = file_json(to_diagram_file(ce.inst.d1));
        c["d2"] = file_json(to_diagram_file(ce.inst.d2));
        c["component_map"] = ids_1based(ce.inst.f);
        c["detail"] = ce.detail;
        ces.push_back(c);
    }
    out["counterexamples"] = ces;
    out["ok"] = r.counterexamples.empty();
    return out;
}

std::variant<Json, std::string> deligne_json(const ParsedDiagram& pd, long long multiplicity) {
    std::vector<std::pair<QuadraticCover, PartialCMType>> choices;
    std::string mode;
    if (pd.cover && pd.phi) {
        mode = "single";
        choices.emplace_back(*pd.cover, *pd.phi);
    } else if (pd.cover) {
        mode = "all-phi";
        for (const auto& phi : enumerate_phis(pd.d, *pd.cover)) choices.emplace_back(*pd.cover, phi);
    } else {
        mode = "all";
        for (const auto& F : enumerate_covers(pd.d.base))
            for (const auto& phi : enumerate_phis(pd.d, F)) choices.emplace_back(F, phi);
    }

    Json runs = Json::array();
    for (const auto& [F, phi] : choices) {
        auto res = deligne_construct(pd.d, F, phi, multiplicity);
        if (auto* err = std::get_if<DeligneError>(&res)) {
            if (!err->internal) return err->message;
            Json j;
            Json cg = Json::array();
            for (const auto& g : F.gens) cg.push_back(to_cycle_string(g));
            j["cover"] = cg;
            j["phi"] = ids_1based(phi.phi);
            j["internal_error"] = err->message;
            runs.push_back(j);
            continue;
        }
        runs.push_back(deligne_run_json(F, phi, std::get<DeligneReport>(res)));
    }
    Json out;
    out["mode"] = mode;
    out["multiplicity"] = multiplicity;
    out["count"] = static_cast<int>(runs.size());
    out["runs"] = runs;
    return out;
}

std::variant<TannakianObject, std::string> parse_object_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        return std::string("expected '<datum>:<dimension>', e.g. \"A1+A1+T2:8\"");
    std::string left = spec.substr(0, colon);
    std::string right = spec.substr(colon + 1);

    long long dim = 0;
    if (right.empty()) return std::string("missing dimension after ':'");
    for (char c : right) {
        if (c < '0' || c > '9') return "invalid dimension '" + right + "'";
        dim = dim * 10 + (c - '0');
        if (dim > 1000000000) return std::string("dimension too large");
    }

    std::vector<SimpleType> comps;
    int center = 0;
    if (left != "1") {
        std::size_t pos = 0;
        while (pos <= left.size()) {
            auto next = left.find('+', pos);
            std::string tok =
                left.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            if (tok.empty()) return std::string("empty factor in datum");
            if (tok[0] == 'T') {
                int k = 0;
                if (tok.size() < 2) return std::string("invalid torus factor 'T'");
                for (std::size_t i = 1; i < tok.size(); ++i) {
                    if (tok[i] < '0' || tok[i] > '9') return "invalid torus factor '" + tok + "'";
                    k = k * 10 + (tok[i] - '0');
                }
                center += k;
            } else {
                auto t = parse_type(tok);
                if (!t) return "invalid simple factor '" + tok + "'";
                comps.push_back(*t);
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
    }
    auto datum = make_datum(comps, center);
    if (!datum) return std::string("invalid datum");
    if (is_trivial(*datum) && dim > 0)
        return std::string("a trivial datum acts faithfully only on dimension 0");
    if (!is_trivial(*datum) && dim == 0)
        return std::string("dimension 0 requires the trivial datum");
    return TannakianObject{*datum, dim};
}

Json hyperadjoint_json(const TannakianObject& v) {
    Json out;
    Json in;
    in["acting"] = to_string(v.acting);
    in["dimension"] = v.dimension;
    out["input"] = in;

    Json chain = Json::array();
    TannakianObject cur = v;
    for (int i = 0;; ++i) {
        Json step;
        step["acting"] = to_string(cur.acting);
        step["dimension"] = cur.dimension;
        chain.push_back(step);
        TannakianObject next = adjoint_object(cur);
        if (next == cur || i > 4) break;
        cur = next;
    }
    out["chain"] = chain;

    auto res = hyperadjoint(v);
    if (auto* err = std::get_if<std::string>(&res)) {
        out["internal_error"] = *err;
        return out;
    }
    const auto& ha = std::get<HyperadjointResult>(res);
    Json st;
    st["acting"] = to_string(ha.object.acting);
    st["dimension"] = ha.object.dimension;
    out["hyperadjoint"] = st;
    out["index"] = ha.index;
    return out;
}

Json goursat_json(int max_order) {
    auto names = zoo_names(max_order);
    Json out;
    out["max_order"] = max_order;
    out["groups"] = strings(names);
    long long pairs = 0, subgroups = 0;
    Json failures = Json::array();
    for (const auto& name1 : names) {
        for (const auto& name2 : names) {
            auto g1 = named_group(name1);
            auto g2 = named_group(name2);
            ++pairs;
            for (const auto& gens : subdirect_subgroups(*g1, *g2)) {
                ++subgroups;
                auto record_failure = [&](const std::string& why) {
                    Json f;
                    f["g1"] = name1;
                    f["g2"] = name2;
                    f["error"] = why;
                    failures.push_back(f);
                };
                auto sp = make_subdirect(*g1, *g2, gens);
                if (!sp) {
                    record_failure("make_subdirect rejected an enumerated subgroup");
                    continue;
                }
                auto gd = goursat(*sp);
                if (auto* err = std::get_if<std::string>(&gd)) {
                    record_failure("goursat: " + *err);
                    continue;
                }
                if (auto defect = verify_goursat(*sp, std::get<GoursatData>(gd)))
                    record_failure("verify: " + *defect);
            }
        }
    }
    out["pairs"] = pairs;
    out["subgroups"] = subgroups;
    out["failures"] = failures;
    out["ok"] = failures.empty();
    return out;
}

}  // namespace deldyn
