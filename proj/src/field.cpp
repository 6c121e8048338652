#include "coldgen/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "coldgen/errors.hpp"

namespace coldgen {

void Grid::validate() const {
  if (nx < 3 || ny < 3) {
    throw DomainError("grid needs at least 3x3 cells, got " + std::to_string(nx) + "x" +
                      std::to_string(ny));
  }
  if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy)) {
    throw DomainError("grid spacings must be positive and finite");
  }
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw DomainError(std::string(what) + ": fields are on different grids");
}

ScalarField::ScalarField(const Grid& grid, double fill) : grid_(grid) {
  grid_.validate();
  values_.assign(grid_.cells(), fill);
}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.cells()) {
    throw DomainError("field has " + std::to_string(values_.size()) + " values, grid needs " +
                      std::to_string(grid_.cells()));
  }
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

ChannelMask::ChannelMask(const Grid& grid, bool fill) : grid_(grid) {
  grid_.validate();
  bits_.assign(grid_.cells(), fill ? 1 : 0);
}

std::size_t ChannelMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

double ChannelMask::fill_fraction() const {
  return static_cast<double>(count()) / static_cast<double>(bits_.size());
}

ScalarField ChannelMask::to_field() const {
  ScalarField f(grid_);
  for (std::size_t k = 0; k < bits_.size(); ++k) f[k] = bits_[k];
  return f;
}

ChannelMask ChannelMask::from_field(const ScalarField& field) {
  ChannelMask m(field.grid());
  for (std::size_t k = 0; k < field.size(); ++k) {
    const double x = field[k];
    if (x != 0.0 && x != 1.0) {
      throw DomainError("mask value at index " + std::to_string(k) + " is neither 0 nor 1");
    }
    m.bits_[k] = x == 1.0 ? 1 : 0;
  }
  return m;
}

}  // namespace coldgen
