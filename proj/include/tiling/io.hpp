/**
 * @file io.hpp
 * @brief CSV and JSON serialization.
 *
 * CSV output uses 17 significant digits and '.' as decimal separator
 * regardless of locale. Files are written to a temporary sibling and renamed
 * into place.
 */

#pragma once

#include "tiling/core.hpp"
#include "tiling/interp.hpp"
#include "tiling/kargaev.hpp"
#include "tiling/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace tiling::io {

using json = nlohmann::ordered_json;

std::string format_double(double x);
double parse_double(std::string_view text);

void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

// Point sets: one coordinate per line. Without an explicit window, the
// window is [-max|p|, max|p|].
std::string point_set_to_csv(const PointSet& set);
PointSet point_set_from_csv(const std::string& text, std::optional<Interval> window = std::nullopt);

/// Rows "x,re,im" for each grid node.
std::string grid_to_csv(const GridFunction& grid);

json to_json(const BandlimitedFunction& f);
BandlimitedFunction bandlimited_from_json(const json& j);

json to_json(const kargaev::SolveReport& report);
kargaev::SolveReport solve_report_from_json(const json& j);

json to_json(const interp::InterpolationSystem& system, const interp::CoefficientSolution& solution);

json to_json(const verify::DensityReport& report);
json to_json(const verify::TilingSumResult& result);
json to_json(const verify::TilingVerdict& verdict);
json to_json(const verify::CyclicVerdict& verdict);
json to_json(const verify::CyclicCensus& census);
json to_json(const PeriodicStructure& ps);
json to_json(const SpectrumMeasure& measure);

/// Serialized with a trailing newline.
std::string dump(const json& j);

}  // namespace tiling::io
