#pragma once

#include <json.hpp>

#include "kap/curve.hpp"
#include "kap/minors.hpp"
#include "kap/scalar.hpp"

namespace kap {

using Json = nlohmann::ordered_json;

/// Curve file: { "n", "tree" (nested parenthesized label lists), "charts":
/// [ { "vertex": <internal index>, "points": { <label or "v<k>">: "p/q"|"inf" } } ] }.
Json curve_to_json(const MarkedCurve& c);
MarkedCurve curve_from_json(const Json& j);

/// MultiPoint file: { "n", "factors": [ ["p/q", ...], ... ] }, factor i with
/// i+1 entries ordered b, c, 1, ..., i-1.
Json multipoint_to_json(const MultiPoint& p);
MultiPoint multipoint_from_json(const Json& j);

Json jet_to_json(const Jet& j);
Json minor_to_json(const MinorIndex& ix);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace kap
