#pragma once

// Plain-text rendering of the JSON reports.  Every renderer consumes the
// builder output from json_io.hpp, so the two formats cannot disagree on
// content.

#include "json_io.hpp"

#include <string>

namespace deldyn {

std::string table_text(const Json& j);
std::string classify_text(const Json& j);
std::string special_text(const Json& j);
std::string oppinv_text(const Json& j);
std::string isom_text(const Json& j);
std::string campaign_text(const Json& j);
std::string deligne_text(const Json& j);
std::string hyperadjoint_text(const Json& j);
std::string goursat_text(const Json& j);

}  // namespace deldyn
