#pragma once

// 2D steady-state heat balance on the cold plate,
//
//   k t lap(T) + Q - h (T - T_coolant) = 0,
//
// discretized with second-order central differences and relaxed with Jacobi
// sweeps. All four sides are adiabatic: the ghost value outside an edge is
// the edge cell itself, so conduction terms telescope to zero over the
// domain.

#include <string>
#include <vector>

#include "coldgen/field.hpp"
#include "coldgen/geometry.hpp"

namespace coldgen {

struct MaterialParams {
  double k = 148.0;           // W m^-1 K^-1 (silicon)
  double thickness = 0.001;   // m
  double t_coolant = 25.0;    // degC
  double h_channel = 15000.0; // W m^-2 K^-1 on channel cells
  double h_base = 10.0;       // W m^-2 K^-1 elsewhere

  void validate() const;
  double rx(const Grid& g) const { return k * thickness / (g.dx * g.dx); }
  double ry(const Grid& g) const { return k * thickness / (g.dy * g.dy); }
};

struct SolverOptions {
  double tol = 1e-4;       // K
  long max_iter = 200000;
};

struct SolveResult {
  ScalarField temperature;
  long iterations = 0;
  double final_residual = 0.0;  // max |T_new - T_old| of the last sweep
  bool converged = false;
};

struct JacobiUpdate {
  ScalarField temperature;
  double residual = 0.0;
};

struct RegionMetrics {
  std::string label;
  double max_c = 0.0;
  double mean_c = 0.0;
};

struct ThermalMetrics {
  double max_c = 0.0;
  double mean_c = 0.0;
  /// Over the union of all chip footprints; equals the domain values when
  /// the layout has no chips.
  RegionMetrics chips;
  std::vector<RegionMetrics> per_chip;
};

ScalarField assemble_h_field(const ChannelMask& mask, const MaterialParams& params);

/// One Jacobi sweep into a fresh buffer; `temperature` is left untouched.
JacobiUpdate jacobi_step(const ScalarField& temperature, const ScalarField& heat_flux,
                         const ScalarField& h, const MaterialParams& params);

/// Jacobi iteration from T = t_coolant.
///
/// A sweep counts as converged once its update is at most `tol` and the
/// distance to the fixed point, extrapolated from the observed contraction
/// rate, is also at most `tol`. Hitting `max_iter` returns the last iterate
/// with `converged == false`. Throws NoSinkError when h is zero everywhere
/// but heat is injected.
SolveResult solve_steady(const ScalarField& heat_flux, const ScalarField& h,
                         const MaterialParams& params, const SolverOptions& options = {});

ThermalMetrics compute_metrics(const ScalarField& temperature, const BoardLayout& layout);

/// Sum of (Q - h (T - T_coolant)) dx dy divided by sum of Q dx dy. Zero when
/// there is no heat input.
double relative_energy_imbalance(const ScalarField& temperature, const ScalarField& heat_flux,
                                 const ScalarField& h, const MaterialParams& params);

}  // namespace coldgen
