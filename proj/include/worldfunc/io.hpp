#pragma once

// Text formats: round-trip numbers, the geometry mini-language, JSON
// converters for kernel types, CSV tables.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "worldfunc/chain.hpp"
#include "worldfunc/equivalence.hpp"
#include "worldfunc/geometry.hpp"
#include "worldfunc/objects.hpp"
#include "worldfunc/straights.hpp"

namespace worldfunc {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal text that parses back to exactly x.
std::string format_double(double x);

/// Parses "kind[:key=value,...]", e.g. "euclidean:dim=3",
/// "discrete:lambda0_sq=0.01", "grainy:lambda0_sq=0.01,sigma0=0.03",
/// "deformed:file=F.json". Relative files resolve against base_dir.
GeometrySpec parse_geometry(std::string_view text, const std::filesystem::path& base_dir = {});

DeformationFunction deformation_from_json(const json& j);
json to_json(const DeformationFunction& f);

/// Canonical, self-contained description (deformation tables inlined).
json to_json(const GeometrySpec& g);
GeometrySpec geometry_from_json(const json& j);

Point point_from_json(const json& j);
json to_json(const Point& p);
/// Accepts a bare array of points or {"points": [...]}.
std::vector<Point> points_from_json(const json& j);

Envelope envelope_from_json(const json& j);
json to_json(const Envelope& e);

json to_json(const EquivalenceReport& r);
json to_json(const SolutionSet& s);
json to_json(const IntransitivityWitness& w);
json to_json(const SkeletonEquivalence& s);

json read_json_file(const std::filesystem::path& path);

/// Writes one CSV line; numbers are written with format_double.
void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);
std::string csv_number(double x);

}  // namespace worldfunc
