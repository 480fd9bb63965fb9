#pragma once

// Structured input and output.  One JSON shape for diagram files, and one
// builder per report kind; every builder uses ordered keys and deterministic
// iteration so identical inputs give byte-identical output.
//
// Node identifiers are 1-based in files and reports, matching cycle notation.

#include "hodge.hpp"
#include "localglobal.hpp"
#include "tannaka.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace deldyn {

using Json = nlohmann::ordered_json;

// The on-disk shape: components, generators in cycle notation, mu as 1-based
// node ids, and optional cover generators (cycle notation over 2*components
// cover points) plus a partial CM type phi (1-based cover point ids).
struct DiagramFile {
    std::vector<SimpleType> components;
    std::vector<std::string> generators;
    std::vector<int> mu;
    std::optional<std::vector<std::string>> cover_generators;
    std::optional<std::vector<int>> phi;

    friend bool operator==(const DiagramFile& a, const DiagramFile& b) {
        return a.components == b.components && a.generators == b.generators && a.mu == b.mu &&
               a.cover_generators == b.cover_generators && a.phi == b.phi;
    }
};

struct ParsedDiagram {
    DiagramFile file;
    DeligneDynkin d;
    std::optional<QuadraticCover> cover;
    std::optional<PartialCMType> phi;
};

// Parses and validates; error messages carry the JSON line on syntax errors
// and the offending field/value otherwise.
std::variant<ParsedDiagram, std::string> parse_diagram_file(const std::string& text);

std::string serialize_diagram_file(const DiagramFile& f);
DiagramFile to_diagram_file(const DeligneDynkin& d);

std::string dump_json(const Json& j);

// --- report builders ------------------------------------------------------

Json table_json(int max_rank);
Json classify_json(const DeligneDynkin& d);
Json special_json(const SimpleType& t);
Json oppinv_json(const SimpleType& t);

// Oracle search between two diagrams over every valid equivariant component
// map; `local`, when set, restricts both actions to the cyclic subgroup
// generated by the joint element whose first leg is the given permutation.
std::variant<Json, std::string> isom_json(const DeligneDynkin& d1, const DeligneDynkin& d2,
                                          const std::optional<Perm>& local);

Json campaign_json(const CampaignResult& r, const InstanceBounds& b);

// Single pipeline run; a run over every valid (cover, phi) pair when the
// parsed file does not pin them.  Input failures surface as the error
// variant; internal assertion failures are reported inside the JSON under
// "internal_error" so campaigns can count them.
std::variant<Json, std::string> deligne_json(const ParsedDiagram& pd, long long multiplicity);

// SPEC grammar: "A1+A2+T3:28" = simple components, optional center torus
// rank (T<k>), then ':' and the object's dimension.
std::variant<TannakianObject, std::string> parse_object_spec(const std::string& spec);
Json hyperadjoint_json(const TannakianObject& v);

Json goursat_json(int max_order);

}  // namespace deldyn
