#pragma once

// Constrained Gray-Scott generator.
//
//   dU/dt = D_U lap(U) - U V^2 + F (1 - U)
//   dV/dt = D_V lap(V) + U V^2 - (F + kappa) V
//
// integrated with explicit Euler on the thermal grid, with no-flux edges.
// After each step V is pinned to 1 on the pinned cells; V >= tau then marks a
// channel.
//
// Rates and diffusivities are expressed in RD units: lengths are measured in
// `length_unit` meters (1 mm by default, i.e. one cell of the default grid)
// and time in steps.

#include <cstdint>
#include <optional>

#include "coldgen/field.hpp"
#include "coldgen/geometry.hpp"

namespace coldgen {

struct RDParams {
  double d_u = 0.16;
  double d_v = 0.08;
  double f = 0.055;
  double kappa = 0.062;
  double dt = 0.5;
  double length_unit = 0.001;  // m per RD length unit

  /// Throws ValidationError unless d_u > d_v > 0 and f, kappa, dt, length_unit > 0.
  void validate() const;
};

struct RDState {
  ScalarField u;
  ScalarField v;
  std::uint64_t step_count = 0;
};

/// Five-point Laplacian using the field's own grid spacing, mirrored edges.
ScalarField laplacian(const ScalarField& phi);
/// Same stencil with explicit spacings `hx`, `hy`.
ScalarField laplacian(const ScalarField& phi, double hx, double hy);

/// Largest stable explicit-Euler step: 1 / (2 max(D_U, D_V) (1/hx^2 + 1/hy^2)),
/// with hx, hy the grid spacings in RD units.
double check_stability(const RDParams& params, const Grid& grid);

/// One explicit Euler step with the scalar feed rate `params.f`.
/// Throws DomainError when dt exceeds check_stability.
RDState gray_scott_step(const RDState& state, const RDParams& params);
/// Same, with a per-cell feed rate replacing `params.f` in both equations.
RDState gray_scott_step(const RDState& state, const RDParams& params, const ScalarField& feed);

/// V = 1 on every pinned cell; nothing else changes.
RDState apply_pinning(const RDState& state, const PinnedSet& pinned);

/// gray_scott_step followed by apply_pinning; increments step_count.
RDState constrained_step(const RDState& state, const RDParams& params, const PinnedSet& pinned);
RDState constrained_step(const RDState& state, const RDParams& params, const PinnedSet& pinned,
                         const ScalarField& feed);

/// Runs `steps` constrained steps in place with double buffering. Produces the
/// same result as calling constrained_step repeatedly. Throws
/// InstabilityError as soon as a field turns non-finite.
void advance_constrained(RDState& state, const RDParams& params, const PinnedSet& pinned,
                         const ScalarField* feed, long steps);

inline constexpr double default_seed_probability = 0.002;

/// U = 1, V = 0; each cell independently (probability `p_seed`) becomes
/// U = V = 0.5; finally V = 1 on the pinned cells. Deterministic in `seed`.
RDState init_state(const Grid& grid, const PinnedSet& pinned, std::uint64_t seed,
                   double p_seed = default_seed_probability);

/// Channel where v >= tau. Throws DomainError unless 0 < tau < 1.
ChannelMask threshold_mask(const ScalarField& v, double tau);

}  // namespace coldgen
