#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fitzcalc/grid.hpp"

namespace fitzcalc {

enum class Format { Csv, Json };

/// Header `# role=<role> axis_a=<lo,hi,n> axis_b=<lo,hi,n> axis_roles=<a,b>`,
/// then one comma-separated row per a-node. Values use the shortest decimal that
/// round-trips;
/// infinities are `inf` / `-inf`.
std::string to_csv(const GridFn2& f);
GridFn2 from_csv(std::string_view text);

/// Same fields as the CSV; infinities are the strings "inf" / "-inf".
nlohmann::json grid_to_json(const GridFn2& f);
GridFn2 grid_from_json(const nlohmann::json& j);

/// Format from the extension (.csv or .json).
Format format_for(const std::filesystem::path& p);
void export_grid(const GridFn2& f, Format fmt, const std::filesystem::path& path);
GridFn2 import_grid(const std::filesystem::path& path);

/// Shortest round-trip decimal for a finite double.
std::string format_double(double v);

}  // namespace fitzcalc
