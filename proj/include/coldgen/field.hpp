#pragma once

// Grid descriptor and the two field types that live on it.
//
// Storage is row-major with i (x) fastest: index = j * nx + i. Row j = 0 is
// the inlet edge, row j = ny - 1 the outlet edge.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace coldgen {

struct Cell {
  int i = 0;
  int j = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell& a, const Cell& b) {
    if (auto c = a.j <=> b.j; c != 0) return c;
    return a.i <=> b.i;
  }
};

struct Grid {
  int nx = 3;
  int ny = 3;
  double dx = 1.0;  // m
  double dy = 1.0;  // m

  /// Throws DomainError unless nx, ny >= 3 and dx, dy > 0.
  void validate() const;

  std::size_t cells() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
  bool contains(Cell c) const { return c.i >= 0 && c.i < nx && c.j >= 0 && c.j < ny; }
  double width() const { return nx * dx; }
  double height() const { return ny * dy; }
  double cell_area() const { return dx * dy; }
  double center_x(int i) const { return (i + 0.5) * dx; }
  double center_y(int j) const { return (j + 0.5) * dy; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Real values on a Grid (temperature, heat flux, h, U, V, feed rate).
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const Grid& grid, double fill = 0.0);
  ScalarField(const Grid& grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double& at(int i, int j) { return values_[grid_.index(i, j)]; }
  double at(int i, int j) const { return values_[grid_.index(i, j)]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double min() const;
  double max() const;
  double sum() const;
  double mean() const { return sum() / static_cast<double>(values_.size()); }
  bool all_finite() const;

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Binary channel indicator: 1 marks a coolant channel cell.
class ChannelMask {
 public:
  ChannelMask() = default;
  explicit ChannelMask(const Grid& grid, bool fill = false);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return bits_.size(); }

  bool at(int i, int j) const { return bits_[grid_.index(i, j)] != 0; }
  void set(int i, int j, bool on = true) { bits_[grid_.index(i, j)] = on ? 1 : 0; }
  bool operator[](std::size_t k) const { return bits_[k] != 0; }
  void set_index(std::size_t k, bool on) { bits_[k] = on ? 1 : 0; }

  std::size_t count() const;
  double fill_fraction() const;

  /// The mask as a {0, 1} field, used for CSV export.
  ScalarField to_field() const;
  /// Accepts only fields whose values are exactly 0 or 1.
  static ChannelMask from_field(const ScalarField& field);

  friend bool operator==(const ChannelMask&, const ChannelMask&) = default;

 private:
  Grid grid_;
  std::vector<std::uint8_t> bits_;
};

/// Throws DomainError when `a` and `b` are not on the same grid.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace coldgen
