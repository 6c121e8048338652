#pragma once

// Closed generation/evaluation loop, the parallel-channel baseline, and the
// side-by-side comparison of two channel masks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coldgen/field.hpp"
#include "coldgen/geometry.hpp"
#include "coldgen/rd_generator.hpp"
#include "coldgen/thermal_solver.hpp"

namespace coldgen {

struct LoopConfig {
  int outer_rounds = 10;
  int rd_steps_per_round = 2000;
  double alpha = 0.5;     // feedback gain on the feed rate
  double f_min = 0.02;
  double f_max = 0.09;
  double tau = 0.3;
  double p_seed = default_seed_probability;
  /// Stop early once |max T| changes by less than this between rounds. 0 disables.
  double plateau_tol = 0.0;
  std::uint64_t seed = 42;
  SolverOptions solver;

  void validate() const;
};

struct BaselineParams {
  double channel_width = 0.002;  // m
  double pitch = 0.004;          // m

  void validate() const;
};

struct RoundRecord {
  int round = 0;
  double mean_c = 0.0;
  double max_c = 0.0;
  double fill_fraction = 0.0;
  bool solver_converged = false;
  long solver_iterations = 0;
};

struct SolverSummary {
  bool converged = false;
  long iterations = 0;
  double final_residual = 0.0;
};

struct DesignReport {
  std::string name;
  ChannelMask mask;
  ScalarField temperature;
  ThermalMetrics metrics;
  double fill_fraction = 0.0;
  SolverSummary solver;
  MaterialParams material;
  /// Final V field; generative runs only.
  std::optional<ScalarField> v;
  std::optional<RDParams> rd;
  std::optional<LoopConfig> loop;
  std::optional<BaselineParams> baseline;
  std::vector<RoundRecord> history;
};

struct DesignSummary {
  std::string name;
  ThermalMetrics metrics;
  double fill_fraction = 0.0;
  SolverSummary solver;
  ScalarField temperature;
};

/// Deltas are a - b, so positive values mean design b runs cooler.
struct ComparisonReport {
  DesignSummary a;
  DesignSummary b;
  double delta_mean_c = 0.0;
  double delta_max_c = 0.0;
  MaterialParams material;
};

/// Straight channels from the inlet edge to the outlet edge, the first one
/// starting at i = 0, repeating every `pitch` across x; the port spans are
/// forced on. Throws DomainError unless 0 < width < pitch and both cover at
/// least one cell.
ChannelMask generate_baseline_parallel(const Grid& grid, const BoardLayout& layout,
                                       double channel_width, double pitch);

/// F(x,y) = clamp(f (1 + alpha theta), f_min, f_max) where theta is the
/// temperature rescaled to [0, 1] (zero for a uniform field).
ScalarField thermal_feedback_field(const ScalarField& temperature, const RDParams& params,
                                   const LoopConfig& config);

/// Solves one mask and packages metrics.
DesignReport evaluate_mask(std::string name, const ChannelMask& mask, const BoardLayout& layout,
                           const MaterialParams& material, const SolverOptions& solver);

/// Each round thresholds V, solves for T, derives the feed field from T and
/// advances the constrained Gray-Scott system. The final mask is solved once
/// more for the reported metrics. Throws InstabilityError on RD blow-up and
/// DomainError on an unstable dt.
DesignReport run_generative_design(const Grid& grid, const BoardLayout& layout,
                                   const MaterialParams& material, const RDParams& rd,
                                   const LoopConfig& config);

ComparisonReport compare_designs(const DesignReport& a, const DesignReport& b);
ComparisonReport compare_designs(std::string name_a, const ChannelMask& mask_a, std::string name_b,
                                 const ChannelMask& mask_b, const BoardLayout& layout,
                                 const MaterialParams& material, const SolverOptions& solver);

}  // namespace coldgen
