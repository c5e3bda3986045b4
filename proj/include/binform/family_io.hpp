#pragma once

#include <string>

#include "json.hpp"

#include "binform/forms.hpp"

namespace binform {

// Family documents are JSON objects mapping decimal degree strings to arrays
// of [a, b] pairs; coefficients are JSON integers, or decimal strings when
// they exceed native range.  Parsing is exact and rejects anything lossy
// (floating-point coefficients included), naming the offending entry.
Family parse_family(const nlohmann::json& doc);
Family parse_family_text(const std::string& text);

// Inverse: degrees ascending, pairs in their set order; coefficients beyond
// native range are emitted as decimal strings.
nlohmann::ordered_json family_json(const Family& fam);

}  // namespace binform
