#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "polycap/geometry.hpp"

namespace polycap {

/// Schema version written into every domain file.
inline constexpr const char* kDomainFileVersion = "polycap-domain-v1";

/// Parses a domain document:
///   { "version": "polycap-domain-v1",
///     "outer": {"arcs": [ArcSpec...]},
///     "holes": [{"arcs": [ArcSpec...]}...],
///     "alpha": [x, y]?, "alpha_k": [[x, y]...]? }
/// ArcSpec kinds: three_point, endpoint_center, segment, full_circle.
/// Throws InvalidParameter naming the offending field.
PolycircularCondenser parse_domain(const nlohmann::json& doc);

/// Serializes to the canonical document (arcs in center/angle or segment
/// form).
nlohmann::json domain_to_json(const PolycircularCondenser& condenser);

/// Canonical text form: sorted keys, every number printed with %.17g.
/// parse -> serialize is idempotent byte-for-byte.
std::string canonical_dump(const nlohmann::json& doc);

/// Loads from a file path or a "builtin:NAME" reference.
PolycircularCondenser load_domain(const std::string& path_or_builtin);

std::vector<std::string> builtin_names();
PolycircularCondenser builtin_domain(const std::string& name);

/// Parses "x+yi" style complex literals ("0.5", "0.3i", "-0.2+0.5i").
Complex parse_complex(const std::string& text);

}  // namespace polycap
