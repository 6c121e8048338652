#include "coldgen/thermal_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "coldgen/errors.hpp"

namespace coldgen {

void MaterialParams::validate() const {
  if (!(k > 0.0)) throw ValidationError("material.k", "must be > 0");
  if (!(thickness > 0.0)) throw ValidationError("material.thickness", "must be > 0");
  if (!std::isfinite(t_coolant)) throw ValidationError("material.t_coolant", "must be finite");
  if (!(h_base >= 0.0)) throw ValidationError("material.h_base", "must be >= 0");
  if (!(h_channel > h_base)) throw ValidationError("material.h_channel", "must exceed h_base");
}

namespace {

// Per-cell constants of the update rule, fixed for the lifetime of a solve.
// The rule is evaluated on the excess temperature over the coolant,
//   T' - Tc = (rx (T_l + T_r - 2 Tc) + ry (T_d + T_u - 2 Tc) + Q) / (2 (rx + ry) + h),
// which is the same update but keeps T = Tc, Q = 0 an exact fixed point.
class JacobiKernel {
 public:
  JacobiKernel(const ScalarField& q, const ScalarField& h, const MaterialParams& params)
      : grid_(q.grid()),
        rx_(params.rx(grid_)),
        ry_(params.ry(grid_)),
        coolant_(params.t_coolant),
        two_coolant_(2.0 * params.t_coolant) {
    require_same_grid(q.grid(), h.grid(), "jacobi");
    source_.resize(grid_.cells());
    inv_diag_.resize(grid_.cells());
    const double diag = 2.0 * (rx_ + ry_);
    for (std::size_t c = 0; c < grid_.cells(); ++c) {
      if (!(h[c] >= 0.0)) throw DomainError("heat transfer coefficient must be >= 0");
      source_[c] = q[c];
      inv_diag_[c] = 1.0 / (diag + h[c]);
    }
  }

  /// Writes the next iterate into `out` and returns max |out - in|.
  double sweep(const double* in, double* out) const {
    const int nx = grid_.nx;
    const int ny = grid_.ny;
    double residual = 0.0;
#ifdef COLDGEN_HAVE_OPENMP
#pragma omp parallel for schedule(static) reduction(max : residual)
#endif
    for (int j = 0; j < ny; ++j) {
      const std::size_t row = static_cast<std::size_t>(j) * nx;
      // Mirrored ghost rows: outside an edge the edge row itself is seen.
      const double* down = in + (j > 0 ? row - nx : row);
      const double* up = in + (j < ny - 1 ? row + nx : row);
      const double* mid = in + row;
      const double* src = source_.data() + row;
      const double* inv = inv_diag_.data() + row;
      double* dst = out + row;
      double local = 0.0;
      for (int i = 0; i < nx; ++i) {
        const double left = mid[i > 0 ? i - 1 : i];
        const double right = mid[i < nx - 1 ? i + 1 : i];
        const double t =
            coolant_ + (rx_ * (left + right - two_coolant_) +
                        ry_ * (down[i] + up[i] - two_coolant_) + src[i]) * inv[i];
        dst[i] = t;
        local = std::max(local, std::abs(t - mid[i]));
      }
      residual = std::max(residual, local);
    }
    return residual;
  }

 private:
  Grid grid_;
  double rx_;
  double ry_;
  double coolant_;
  double two_coolant_;
  std::vector<double> source_;
  std::vector<double> inv_diag_;
};

}  // namespace

ScalarField assemble_h_field(const ChannelMask& mask, const MaterialParams& params) {
  ScalarField h(mask.grid(), params.h_base);
  for (std::size_t c = 0; c < mask.size(); ++c) {
    if (mask[c]) h[c] = params.h_channel;
  }
  return h;
}

JacobiUpdate jacobi_step(const ScalarField& temperature, const ScalarField& heat_flux,
                         const ScalarField& h, const MaterialParams& params) {
  require_same_grid(temperature.grid(), heat_flux.grid(), "jacobi_step");
  const JacobiKernel kernel(heat_flux, h, params);
  JacobiUpdate result{ScalarField(temperature.grid()), 0.0};
  result.residual = kernel.sweep(temperature.values().data(), result.temperature.values().data());
  return result;
}

SolveResult solve_steady(const ScalarField& heat_flux, const ScalarField& h,
                         const MaterialParams& params, const SolverOptions& options) {
  require_same_grid(heat_flux.grid(), h.grid(), "solve_steady");
  if (!(options.tol > 0.0)) throw DomainError("solver tolerance must be > 0");
  if (options.max_iter < 1) throw DomainError("solver max_iter must be >= 1");
  const auto hv = h.values();
  if (std::all_of(hv.begin(), hv.end(), [](double x) { return x == 0.0; }) &&
      heat_flux.sum() > 0.0) {
    throw NoSinkError("h is zero everywhere while heat is injected; no steady state exists");
  }

  const JacobiKernel kernel(heat_flux, h, params);
  SolveResult result{ScalarField(heat_flux.grid(), params.t_coolant), 0, 0.0, false};
  ScalarField next(heat_flux.grid());

  // Recent contraction ratios of the update norm. The largest one bounds the
  // remaining error by residual * rho / (1 - rho).
  constexpr std::size_t window = 16;
  std::array<double, window> ratios{};
  std::size_t seen = 0;
  double previous = 0.0;

  for (long it = 1; it <= options.max_iter; ++it) {
    const double residual =
        kernel.sweep(result.temperature.values().data(), next.values().data());
    std::swap(result.temperature, next);
    result.iterations = it;
    result.final_residual = residual;
    if (residual == 0.0) {
      result.converged = true;
      break;
    }
    if (previous > 0.0) ratios[seen++ % window] = residual / previous;
    previous = residual;
    if (residual <= options.tol && seen > 0) {
      const double rho =
          *std::max_element(ratios.begin(), ratios.begin() + std::min(seen, window));
      if (rho < 1.0 && residual * rho / (1.0 - rho) <= options.tol) {
        result.converged = true;
        break;
      }
    }
  }
  return result;
}

ThermalMetrics compute_metrics(const ScalarField& temperature, const BoardLayout& layout) {
  const Grid& grid = temperature.grid();
  ThermalMetrics m;
  m.max_c = temperature.max();
  m.mean_c = temperature.mean();

  std::vector<std::uint8_t> in_chip(grid.cells(), 0);
  for (const auto& chip : layout.chips) {
    RegionMetrics r{chip.region.label, -std::numeric_limits<double>::infinity(), 0.0};
    const auto cells = rasterize(grid, chip.region);
    for (const auto c : cells) {
      const double t = temperature.at(c.i, c.j);
      r.max_c = std::max(r.max_c, t);
      r.mean_c += t;
      in_chip[grid.index(c.i, c.j)] = 1;
    }
    if (cells.empty()) {
      r.max_c = r.mean_c = std::numeric_limits<double>::quiet_NaN();
    } else {
      r.mean_c /= static_cast<double>(cells.size());
    }
    m.per_chip.push_back(std::move(r));
  }

  m.chips.label = "chips";
  std::size_t count = 0;
  double sum = 0.0;
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    if (!in_chip[c]) continue;
    ++count;
    sum += temperature[c];
    peak = std::max(peak, temperature[c]);
  }
  if (count == 0) {
    m.chips.max_c = m.max_c;
    m.chips.mean_c = m.mean_c;
  } else {
    m.chips.max_c = peak;
    m.chips.mean_c = sum / static_cast<double>(count);
  }
  return m;
}

double relative_energy_imbalance(const ScalarField& temperature, const ScalarField& heat_flux,
                                 const ScalarField& h, const MaterialParams& params) {
  require_same_grid(temperature.grid(), heat_flux.grid(), "energy balance");
  require_same_grid(temperature.grid(), h.grid(), "energy balance");
  const double area = temperature.grid().cell_area();
  double net = 0.0;
  double input = 0.0;
  for (std::size_t c = 0; c < temperature.size(); ++c) {
    net += (heat_flux[c] - h[c] * (temperature[c] - params.t_coolant)) * area;
    input += heat_flux[c] * area;
  }
  if (input == 0.0) return 0.0;
  return std::abs(net) / input;
}

}  // namespace coldgen
