#include "coldgen/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coldgen/errors.hpp"

namespace coldgen {

namespace {

void validate_span(const Grid& grid, const PortSpan& span, Edge expected, const char* name) {
  if (span.edge != expected) {
    throw ValidationError(name, expected == Edge::j_min ? "must lie on the j = 0 edge"
                                                        : "must lie on the j = ny-1 edge");
  }
  if (span.i0 < 0 || span.i1 < span.i0 || span.i1 > grid.nx - 1) {
    throw ValidationError(name, "span [" + std::to_string(span.i0) + ", " +
                                    std::to_string(span.i1) + "] outside 0.." +
                                    std::to_string(grid.nx - 1));
  }
}

std::vector<Cell> span_cells(const Grid& grid, const PortSpan& span) {
  const int j = span.edge == Edge::j_min ? 0 : grid.ny - 1;
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(span.cells()));
  for (int i = span.i0; i <= span.i1; ++i) cells.push_back({i, j});
  return cells;
}

}  // namespace

std::vector<Cell> rasterize(const Grid& grid, const RectRegion& rect) {
  std::vector<Cell> cells;
  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.center_y(j);
    if (y < rect.y0 || y >= rect.y1) continue;
    for (int i = 0; i < grid.nx; ++i) {
      if (rect.contains(grid.center_x(i), y)) cells.push_back({i, j});
    }
  }
  return cells;
}

PortSpan rasterize_port(const Grid& grid, Edge edge, double center_x, double width) {
  if (!(width > 0.0)) throw DomainError("port width must be positive");
  const double lo = center_x - 0.5 * width;
  const double hi = center_x + 0.5 * width;
  int i0 = grid.nx;
  int i1 = -1;
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.center_x(i);
    if (x >= lo && x <= hi) {
      i0 = std::min(i0, i);
      i1 = std::max(i1, i);
    }
  }
  if (i1 < 0) throw DomainError("port of width " + std::to_string(width) + " m covers no cell");
  return {edge, i0, i1};
}

void validate_layout(const Grid& grid, const BoardLayout& layout) {
  grid.validate();
  constexpr double slack = 1e-12;
  for (std::size_t c = 0; c < layout.chips.size(); ++c) {
    const auto& chip = layout.chips[c];
    const auto& r = chip.region;
    const std::string name = "layout.chips[" + std::to_string(c) + "]";
    if (!(chip.tdp > 0.0)) throw ValidationError(name + ".tdp", "must be > 0");
    if (!(r.x0 < r.x1)) throw ValidationError(name + ".x1", "must exceed x0");
    if (!(r.y0 < r.y1)) throw ValidationError(name + ".y1", "must exceed y0");
    if (r.x0 < -slack || r.y0 < -slack || r.x1 > grid.width() + slack ||
        r.y1 > grid.height() + slack) {
      throw ValidationError(name, "rectangle extends beyond the board");
    }
  }
  if (!(layout.port_width > 0.0)) throw ValidationError("layout.port_width", "must be > 0");
  validate_span(grid, layout.inlet, Edge::j_min, "layout.inlet");
  validate_span(grid, layout.outlet, Edge::j_max, "layout.outlet");
}

std::pair<Grid, BoardLayout> default_layout() {
  const Grid grid{defaults::nx, defaults::ny, defaults::spacing, defaults::spacing};
  BoardLayout layout;
  layout.chips = {{defaults::gpu_left, defaults::gpu_tdp},
                  {defaults::gpu_right, defaults::gpu_tdp},
                  {defaults::cpu, defaults::cpu_tdp}};
  layout.port_width = defaults::port_width;
  const double center = 0.5 * grid.width();
  layout.inlet = rasterize_port(grid, Edge::j_min, center, layout.port_width);
  layout.outlet = rasterize_port(grid, Edge::j_max, center, layout.port_width);
  return {grid, layout};
}

ScalarField build_heat_flux_map(const Grid& grid, const BoardLayout& layout) {
  validate_layout(grid, layout);
  ScalarField q(grid);
  for (const auto& chip : layout.chips) {
    const auto cells = rasterize(grid, chip.region);
    if (cells.empty()) {
      throw DomainError("chip '" + chip.region.label + "' covers no cell; refine the grid");
    }
    const double flux = chip.tdp / (static_cast<double>(cells.size()) * grid.cell_area());
    for (const auto c : cells) q.at(c.i, c.j) += flux;
  }
  return q;
}

PinnedSet::PinnedSet(const Grid& grid, std::vector<Cell> inlet, std::vector<Cell> outlet,
                     std::vector<Cell> chips)
    : grid_(grid), inlet_(std::move(inlet)), outlet_(std::move(outlet)), chips_(std::move(chips)) {
  grid_.validate();
  for (const auto* part : {&inlet_, &outlet_, &chips_}) {
    for (const auto c : *part) {
      if (!grid_.contains(c)) {
        throw DomainError("pinned cell (" + std::to_string(c.i) + ", " + std::to_string(c.j) +
                          ") is outside the grid");
      }
      combined_.push_back(c);
    }
  }
  std::sort(combined_.begin(), combined_.end());
  combined_.erase(std::unique(combined_.begin(), combined_.end()), combined_.end());
  indices_.reserve(combined_.size());
  for (const auto c : combined_) indices_.push_back(grid_.index(c.i, c.j));
}

bool PinnedSet::contains(Cell c) const {
  return std::binary_search(combined_.begin(), combined_.end(), c);
}

PinnedSet build_pinned_sets(const Grid& grid, const BoardLayout& layout) {
  validate_layout(grid, layout);
  std::vector<Cell> chips;
  for (const auto& chip : layout.chips) {
    const auto cells = rasterize(grid, chip.region);
    chips.insert(chips.end(), cells.begin(), cells.end());
  }
  std::sort(chips.begin(), chips.end());
  chips.erase(std::unique(chips.begin(), chips.end()), chips.end());
  return PinnedSet(grid, span_cells(grid, layout.inlet), span_cells(grid, layout.outlet),
                   std::move(chips));
}

}  // namespace coldgen
