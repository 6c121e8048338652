#pragma once

// Board description: chip footprints with their TDPs and the inlet/outlet
// ports. Everything downstream (heat-flux map, pinned cells, baseline
// channels) is rasterized from this with the cell-center rule: a cell belongs
// to a rectangle when its center lies in [x0, x1) x [y0, y1).

#include <string>
#include <utility>
#include <vector>

#include "coldgen/field.hpp"

namespace coldgen {

struct RectRegion {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;
  std::string label;

  bool contains(double x, double y) const { return x >= x0 && x < x1 && y >= y0 && y < y1; }
  double area() const { return (x1 - x0) * (y1 - y0); }
};

struct Chip {
  RectRegion region;
  double tdp = 0.0;  // W
};

enum class Edge { j_min, j_max };

/// Inclusive cell range [i0, i1] along one horizontal edge.
struct PortSpan {
  Edge edge = Edge::j_min;
  int i0 = 0;
  int i1 = 0;
  int cells() const { return i1 - i0 + 1; }
};

struct BoardLayout {
  std::vector<Chip> chips;
  PortSpan inlet{Edge::j_min, 0, 0};
  PortSpan outlet{Edge::j_max, 0, 0};
  double port_width = 0.0254;  // m
};

namespace defaults {
// 100 mm x 140 mm board at 1 mm resolution. The two GPUs sit side by side
// near the inlet edge (y = 0), the CPU is centered near the outlet edge.
inline constexpr int nx = 100;
inline constexpr int ny = 140;
inline constexpr double spacing = 0.001;
inline constexpr double gpu_tdp = 1200.0;
inline constexpr double cpu_tdp = 300.0;
inline constexpr double port_width = 0.0254;
inline const RectRegion gpu_left{0.006, 0.015, 0.046, 0.055, "GPU_L"};
inline const RectRegion gpu_right{0.054, 0.015, 0.094, 0.055, "GPU_R"};
inline const RectRegion cpu{0.030, 0.090, 0.070, 0.120, "CPU"};
}  // namespace defaults

/// Cells whose centers lie within `width` centered on `center_x` along `edge`.
/// Throws DomainError if the port covers no cell.
PortSpan rasterize_port(const Grid& grid, Edge edge, double center_x, double width);

/// Cells whose centers lie in `rect`, in row-major order.
std::vector<Cell> rasterize(const Grid& grid, const RectRegion& rect);

/// Throws ValidationError naming the offending element.
void validate_layout(const Grid& grid, const BoardLayout& layout);

std::pair<Grid, BoardLayout> default_layout();

/// Uniform TDP / rasterized-area flux inside each chip, zero elsewhere.
/// Throws DomainError if a chip covers no cell.
ScalarField build_heat_flux_map(const Grid& grid, const BoardLayout& layout);

/// Inlet, outlet and chip cells, kept individually and as their union.
class PinnedSet {
 public:
  PinnedSet() = default;
  PinnedSet(const Grid& grid, std::vector<Cell> inlet, std::vector<Cell> outlet,
            std::vector<Cell> chips);

  const Grid& grid() const { return grid_; }
  const std::vector<Cell>& inlet() const { return inlet_; }
  const std::vector<Cell>& outlet() const { return outlet_; }
  const std::vector<Cell>& chips() const { return chips_; }
  /// Sorted, duplicate-free union.
  const std::vector<Cell>& combined() const { return combined_; }
  /// Linear indices of `combined()`.
  const std::vector<std::size_t>& indices() const { return indices_; }

  bool contains(Cell c) const;
  std::size_t size() const { return combined_.size(); }
  bool empty() const { return combined_.empty(); }

 private:
  Grid grid_;
  std::vector<Cell> inlet_;
  std::vector<Cell> outlet_;
  std::vector<Cell> chips_;
  std::vector<Cell> combined_;
  std::vector<std::size_t> indices_;
};

PinnedSet build_pinned_sets(const Grid& grid, const BoardLayout& layout);

}  // namespace coldgen
