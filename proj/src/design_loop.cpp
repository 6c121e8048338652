#include "coldgen/design_loop.hpp"

#include <algorithm>
#include <cmath>

#include "coldgen/errors.hpp"

namespace coldgen {

void LoopConfig::validate() const {
  if (outer_rounds < 1) throw ValidationError("loop.outer_rounds", "must be >= 1");
  if (rd_steps_per_round < 1) throw ValidationError("loop.rd_steps_per_round", "must be >= 1");
  if (!(alpha >= 0.0)) throw ValidationError("loop.alpha", "must be >= 0");
  if (!(f_min > 0.0)) throw ValidationError("loop.f_min", "must be > 0");
  if (!(f_max >= f_min)) throw ValidationError("loop.f_max", "must be >= f_min");
  if (!(tau > 0.0 && tau < 1.0)) throw ValidationError("loop.tau", "must lie in (0, 1)");
  if (!(p_seed >= 0.0 && p_seed <= 1.0)) throw ValidationError("loop.p_seed", "must lie in [0, 1]");
  if (!(plateau_tol >= 0.0)) throw ValidationError("loop.plateau_tol", "must be >= 0");
  if (!(solver.tol > 0.0)) throw ValidationError("solver.tol", "must be > 0");
  if (solver.max_iter < 1) throw ValidationError("solver.max_iter", "must be >= 1");
}

void BaselineParams::validate() const {
  if (!(channel_width > 0.0)) throw ValidationError("baseline.channel_width", "must be > 0");
  if (!(pitch > channel_width)) throw ValidationError("baseline.pitch", "must exceed channel_width");
}

ChannelMask generate_baseline_parallel(const Grid& grid, const BoardLayout& layout,
                                       double channel_width, double pitch) {
  validate_layout(grid, layout);
  if (!(channel_width > 0.0) || !(channel_width < pitch)) {
    throw DomainError("baseline channels need 0 < channel_width < pitch");
  }
  const long width_cells = std::lround(channel_width / grid.dx);
  const long pitch_cells = std::lround(pitch / grid.dx);
  if (width_cells < 1 || width_cells >= pitch_cells) {
    throw DomainError("baseline width/pitch do not rasterize to 1 <= width < pitch cells");
  }
  ChannelMask mask(grid);
  for (int i = 0; i < grid.nx; ++i) {
    if (i % pitch_cells >= width_cells) continue;
    for (int j = 0; j < grid.ny; ++j) mask.set(i, j);
  }
  for (int i = layout.inlet.i0; i <= layout.inlet.i1; ++i) mask.set(i, 0);
  for (int i = layout.outlet.i0; i <= layout.outlet.i1; ++i) mask.set(i, grid.ny - 1);
  return mask;
}

ScalarField thermal_feedback_field(const ScalarField& temperature, const RDParams& params,
                                   const LoopConfig& config) {
  const double lo = temperature.min();
  const double span = temperature.max() - lo;
  ScalarField feed(temperature.grid());
  for (std::size_t c = 0; c < feed.size(); ++c) {
    const double theta = span > 0.0 ? (temperature[c] - lo) / span : 0.0;
    feed[c] = std::clamp(params.f * (1.0 + config.alpha * theta), config.f_min, config.f_max);
  }
  return feed;
}

DesignReport evaluate_mask(std::string name, const ChannelMask& mask, const BoardLayout& layout,
                           const MaterialParams& material, const SolverOptions& solver) {
  material.validate();
  const Grid& grid = mask.grid();
  const ScalarField q = build_heat_flux_map(grid, layout);
  SolveResult solved = solve_steady(q, assemble_h_field(mask, material), material, solver);

  DesignReport report;
  report.name = std::move(name);
  report.mask = mask;
  report.metrics = compute_metrics(solved.temperature, layout);
  report.temperature = std::move(solved.temperature);
  report.fill_fraction = mask.fill_fraction();
  report.solver = {solved.converged, solved.iterations, solved.final_residual};
  report.material = material;
  return report;
}

DesignReport run_generative_design(const Grid& grid, const BoardLayout& layout,
                                   const MaterialParams& material, const RDParams& rd,
                                   const LoopConfig& config) {
  material.validate();
  rd.validate();
  config.validate();

  const ScalarField q = build_heat_flux_map(grid, layout);
  const PinnedSet pinned = build_pinned_sets(grid, layout);
  RDState state = init_state(grid, pinned, config.seed, config.p_seed);

  std::vector<RoundRecord> history;
  for (int round = 0; round < config.outer_rounds; ++round) {
    const ChannelMask mask = threshold_mask(state.v, config.tau);
    const SolveResult solved =
        solve_steady(q, assemble_h_field(mask, material), material, config.solver);
    const double max_c = solved.temperature.max();
    history.push_back({round, solved.temperature.mean(), max_c, mask.fill_fraction(),
                       solved.converged, solved.iterations});

    const ScalarField feed = thermal_feedback_field(solved.temperature, rd, config);
    advance_constrained(state, rd, pinned, &feed, config.rd_steps_per_round);

    if (config.plateau_tol > 0.0 && history.size() >= 2 &&
        std::abs(history[history.size() - 2].max_c - max_c) < config.plateau_tol) {
      break;
    }
  }

  DesignReport report =
      evaluate_mask("generative", threshold_mask(state.v, config.tau), layout, material,
                    config.solver);
  report.v = std::move(state.v);
  report.rd = rd;
  report.loop = config;
  report.history = std::move(history);
  return report;
}

namespace {

DesignSummary summarize(const DesignReport& r) {
  return {r.name, r.metrics, r.fill_fraction, r.solver, r.temperature};
}

}  // namespace

ComparisonReport compare_designs(const DesignReport& a, const DesignReport& b) {
  require_same_grid(a.mask.grid(), b.mask.grid(), "compare_designs");
  ComparisonReport out;
  out.a = summarize(a);
  out.b = summarize(b);
  out.delta_mean_c = a.metrics.mean_c - b.metrics.mean_c;
  out.delta_max_c = a.metrics.max_c - b.metrics.max_c;
  out.material = a.material;
  return out;
}

ComparisonReport compare_designs(std::string name_a, const ChannelMask& mask_a, std::string name_b,
                                 const ChannelMask& mask_b, const BoardLayout& layout,
                                 const MaterialParams& material, const SolverOptions& solver) {
  require_same_grid(mask_a.grid(), mask_b.grid(), "compare_designs");
  return compare_designs(evaluate_mask(std::move(name_a), mask_a, layout, material, solver),
                         evaluate_mask(std::move(name_b), mask_b, layout, material, solver));
}

}  // namespace coldgen
