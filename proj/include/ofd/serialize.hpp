#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ofd/inference.hpp"
#include "ofd/lattice.hpp"
#include "ofd/verify.hpp"

namespace ofd {

/// {"lhs": [names], "rhs": name, "kind": ..., "theta"?: n, "support": s}
nlohmann::ordered_json ofd_to_json(const std::vector<std::string>& schema, const Ofd& d);
nlohmann::ordered_json ofds_to_json(const std::vector<std::string>& schema, const std::vector<Ofd>& ofds);
/// One line per dependency: "[CC] -> CTRY synonym support=1".
std::string ofds_to_text(const std::vector<std::string>& schema, const std::vector<Ofd>& ofds);

nlohmann::ordered_json stats_to_json(const DiscoveryResult& result, OfdKind kind);

/// Reads the array shape above. "rhs" may also be an array of names.
/// Dependencies are grouped by kind, in first-seen order. Throws
/// InferenceError on unknown attribute names or a malformed document.
std::vector<OfdSet> parse_ofd_sets(std::string_view text, const std::vector<std::string>& schema);
/// As parse_ofd_sets, but the document must hold a single kind; an empty
/// array yields an empty set of `fallback` kind.
OfdSet parse_ofd_set(std::string_view text, const std::vector<std::string>& schema,
                     OfdKind fallback = OfdKind::synonym());

}  // namespace ofd
