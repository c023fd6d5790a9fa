/**
 * File formats.
 *
 * Polytope document:
 *   {"dim": d, "halfspaces": [{"normal": [...], "offset": b}, ...]}   (n.x + b >= 0)
 *   {"dim": 2, "vertices": [[x, y], ...]}
 * Exactly one of "halfspaces" / "vertices" must be present.
 *
 * Support listing: array of
 *   {"kind": "simplex"|"strip", "facets": [...], "cross_dim": j,
 *    "apexes": [[...], ...], "basis": [[...], ...]}
 * Strip apexes are in cross-section (basis) coordinates; a simplex reports
 * cross_dim = d and the identity basis.
 */
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "extremal/polytope.hpp"
#include "extremal/supports.hpp"

namespace extremal {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses and validates a polytope document.
PolytopeH parse_polytope_json(std::string_view text, const Tolerances& tol = {},
                              const Limits& limits = {});
PolytopeH load_polytope(const std::filesystem::path& path, const Tolerances& tol = {},
                        const Limits& limits = {});

nlohmann::json polytope_to_json(const PolytopeH& k);
nlohmann::json support_to_json(const Support& s);
nlohmann::json supports_to_json(const SupportSet& set);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

}  // namespace extremal
