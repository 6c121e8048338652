#pragma once

// Run configuration (JSON), field CSV, PGM heatmaps and JSON reports.
// The config schema is documented in docs/config.md.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coldgen/design_loop.hpp"
#include "coldgen/field.hpp"
#include "coldgen/geometry.hpp"
#include "coldgen/rd_generator.hpp"
#include "coldgen/thermal_solver.hpp"

namespace coldgen {

inline constexpr std::string_view tool_name = "coldgen";
inline constexpr std::string_view tool_version = COLDGEN_VERSION;

struct PortConfig {
  double width = defaults::port_width;
  /// Port centers along x; unset means centered on the board.
  std::optional<double> inlet_center_x;
  std::optional<double> outlet_center_x;
};

struct OutputOptions {
  /// Fixed (lo, hi) for temperature heatmaps; unset means per-image auto range.
  std::optional<std::pair<double, double>> heatmap_range;
};

struct RunConfig {
  Grid grid{defaults::nx, defaults::ny, defaults::spacing, defaults::spacing};
  std::vector<Chip> chips{{defaults::gpu_left, defaults::gpu_tdp},
                          {defaults::gpu_right, defaults::gpu_tdp},
                          {defaults::cpu, defaults::cpu_tdp}};
  PortConfig ports;
  MaterialParams material;
  RDParams rd;
  LoopConfig loop;
  BaselineParams baseline;
  OutputOptions output;

  /// Rasterizes the ports onto the grid.
  BoardLayout layout() const;
  /// Throws ValidationError naming the first violated field.
  void validate() const;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);
/// Throws ParseError on malformed JSON, ValidationError on bad values or unknown keys.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Header line "nx,ny,dx,dy" with the grid's values, then one line per row j
/// holding the nx values of that row, i ascending. Values use the shortest
/// representation that reads back to the identical double.
void export_field_csv(const ScalarField& field, const std::filesystem::path& path);
ScalarField import_field_csv(const std::filesystem::path& path);
void export_mask_csv(const ChannelMask& mask, const std::filesystem::path& path);
ChannelMask import_mask_csv(const std::filesystem::path& path);

/// round((v - lo) / (hi - lo) * 255) with halves rounded up, clamped to
/// [0, 255]. A degenerate range (hi == lo) maps everything to 0.
std::uint8_t quantize_pixel(double value, double lo, double hi);
std::vector<std::uint8_t> heatmap_pixels(const ScalarField& field,
                                         std::optional<std::pair<double, double>> range = {});
/// Binary PGM (P5, maxval 255), nx columns by ny rows, row j = 0 first.
void export_heatmap(const ScalarField& field, const std::filesystem::path& path,
                    std::optional<std::pair<double, double>> range = {});

nlohmann::json metrics_to_json(const ThermalMetrics& metrics);
nlohmann::json report_to_json(const DesignReport& report);
nlohmann::json report_to_json(const ComparisonReport& report);
/// Keys are sorted, so the bytes depend only on the report contents.
void write_report_json(const DesignReport& report, const std::filesystem::path& path);
void write_report_json(const ComparisonReport& report, const std::filesystem::path& path);

}  // namespace coldgen
