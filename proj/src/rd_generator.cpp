#include "coldgen/rd_generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "coldgen/errors.hpp"

namespace coldgen {

void RDParams::validate() const {
  if (!(d_v > 0.0)) throw ValidationError("rd.d_v", "must be > 0");
  if (!(d_u > d_v)) throw ValidationError("rd.d_u", "must exceed d_v");
  if (!(f > 0.0)) throw ValidationError("rd.f", "must be > 0");
  if (!(kappa > 0.0)) throw ValidationError("rd.kappa", "must be > 0");
  if (!(dt > 0.0)) throw ValidationError("rd.dt", "must be > 0");
  if (!(length_unit > 0.0)) throw ValidationError("rd.length_unit", "must be > 0");
}

namespace {

// Five-point stencil at (i, j) of row-major data with mirrored edges. Shared
// by laplacian() and the fused Gray-Scott kernel so both round identically.
struct Stencil {
  int nx;
  int ny;
  double ihx2;
  double ihy2;

  double operator()(const double* p, int i, int j) const {
    const std::size_t row = static_cast<std::size_t>(j) * nx;
    const double* mid = p + row;
    const double* down = p + (j > 0 ? row - nx : row);
    const double* up = p + (j < ny - 1 ? row + nx : row);
    const double c = mid[i];
    const double left = mid[i > 0 ? i - 1 : i];
    const double right = mid[i < nx - 1 ? i + 1 : i];
    return (left - 2.0 * c + right) * ihx2 + (down[i] - 2.0 * c + up[i]) * ihy2;
  }
};

Stencil rd_stencil(const Grid& g, const RDParams& params) {
  const double hx = g.dx / params.length_unit;
  const double hy = g.dy / params.length_unit;
  return {g.nx, g.ny, 1.0 / (hx * hx), 1.0 / (hy * hy)};
}

void require_stable(const RDParams& params, const Grid& grid) {
  const double limit = check_stability(params, grid);
  if (params.dt > limit * (1.0 + 1e-12)) {
    throw DomainError("rd.dt = " + std::to_string(params.dt) +
                      " exceeds the explicit stability limit " + std::to_string(limit));
  }
}

// Explicit Euler update of (u, v) into (u_out, v_out). `feed` may be null,
// in which case params.f is used everywhere. Returns false if any output
// value is non-finite.
bool gray_scott_kernel(const RDState& in, const RDParams& params, const ScalarField* feed,
                       double* u_out, double* v_out) {
  const Grid& g = in.u.grid();
  const Stencil lap = rd_stencil(g, params);
  const double* u = in.u.values().data();
  const double* v = in.v.values().data();
  const double* f_cell = feed != nullptr ? feed->values().data() : nullptr;
  const double dt = params.dt;
  bool finite = true;
#ifdef COLDGEN_HAVE_OPENMP
#pragma omp parallel for schedule(static) reduction(&& : finite)
#endif
  for (int j = 0; j < g.ny; ++j) {
    bool row_ok = true;
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t c = g.index(i, j);
      const double f = f_cell != nullptr ? f_cell[c] : params.f;
      const double uc = u[c];
      const double vc = v[c];
      const double uvv = uc * vc * vc;
      const double un = uc + dt * (params.d_u * lap(u, i, j) - uvv + f * (1.0 - uc));
      const double vn = vc + dt * (params.d_v * lap(v, i, j) + uvv - (f + params.kappa) * vc);
      u_out[c] = un;
      v_out[c] = vn;
      row_ok = row_ok && std::isfinite(un) && std::isfinite(vn);
    }
    finite = finite && row_ok;
  }
  return finite;
}

void check_inputs(const RDState& state, const RDParams& params, const ScalarField* feed) {
  params.validate();
  require_same_grid(state.u.grid(), state.v.grid(), "gray_scott_step");
  if (feed != nullptr) require_same_grid(state.u.grid(), feed->grid(), "gray_scott_step feed");
  require_stable(params, state.u.grid());
}

RDState step_impl(const RDState& state, const RDParams& params, const ScalarField* feed) {
  check_inputs(state, params, feed);
  RDState next{ScalarField(state.u.grid()), ScalarField(state.v.grid()), state.step_count};
  gray_scott_kernel(state, params, feed, next.u.values().data(), next.v.values().data());
  return next;
}

void pin_in_place(ScalarField& v, const PinnedSet& pinned) {
  for (const auto k : pinned.indices()) v[k] = 1.0;
}

}  // namespace

ScalarField laplacian(const ScalarField& phi) {
  return laplacian(phi, phi.grid().dx, phi.grid().dy);
}

ScalarField laplacian(const ScalarField& phi, double hx, double hy) {
  if (!(hx > 0.0) || !(hy > 0.0)) throw DomainError("laplacian spacings must be > 0");
  const Grid& g = phi.grid();
  const Stencil lap{g.nx, g.ny, 1.0 / (hx * hx), 1.0 / (hy * hy)};
  ScalarField out(g);
  const double* p = phi.values().data();
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) out.at(i, j) = lap(p, i, j);
  }
  return out;
}

double check_stability(const RDParams& params, const Grid& grid) {
  const double hx = grid.dx / params.length_unit;
  const double hy = grid.dy / params.length_unit;
  return 1.0 / (2.0 * std::max(params.d_u, params.d_v) * (1.0 / (hx * hx) + 1.0 / (hy * hy)));
}

RDState gray_scott_step(const RDState& state, const RDParams& params) {
  return step_impl(state, params, nullptr);
}

RDState gray_scott_step(const RDState& state, const RDParams& params, const ScalarField& feed) {
  return step_impl(state, params, &feed);
}

RDState apply_pinning(const RDState& state, const PinnedSet& pinned) {
  if (!pinned.empty()) require_same_grid(state.v.grid(), pinned.grid(), "apply_pinning");
  RDState out = state;
  pin_in_place(out.v, pinned);
  return out;
}

RDState constrained_step(const RDState& state, const RDParams& params, const PinnedSet& pinned) {
  RDState out = apply_pinning(gray_scott_step(state, params), pinned);
  ++out.step_count;
  return out;
}

RDState constrained_step(const RDState& state, const RDParams& params, const PinnedSet& pinned,
                         const ScalarField& feed) {
  RDState out = apply_pinning(gray_scott_step(state, params, feed), pinned);
  ++out.step_count;
  return out;
}

void advance_constrained(RDState& state, const RDParams& params, const PinnedSet& pinned,
                         const ScalarField* feed, long steps) {
  check_inputs(state, params, feed);
  if (!pinned.empty()) require_same_grid(state.v.grid(), pinned.grid(), "advance_constrained");
  RDState scratch{ScalarField(state.u.grid()), ScalarField(state.v.grid()), 0};
  for (long s = 0; s < steps; ++s) {
    const bool finite = gray_scott_kernel(state, params, feed, scratch.u.values().data(),
                                          scratch.v.values().data());
    pin_in_place(scratch.v, pinned);
    std::swap(state.u, scratch.u);
    std::swap(state.v, scratch.v);
    ++state.step_count;
    if (!finite) {
      throw InstabilityError("reaction-diffusion fields became non-finite at step " +
                             std::to_string(state.step_count));
    }
  }
}

RDState init_state(const Grid& grid, const PinnedSet& pinned, std::uint64_t seed, double p_seed) {
  if (!(p_seed >= 0.0 && p_seed <= 1.0)) throw DomainError("p_seed must lie in [0, 1]");
  RDState state{ScalarField(grid, 1.0), ScalarField(grid, 0.0), 0};
  // Raw engine output mapped to [0, 1) by hand so the draw sequence does not
  // depend on the standard library's distribution implementation.
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (r < p_seed) {
      state.u[c] = 0.5;
      state.v[c] = 0.5;
    }
  }
  if (!pinned.empty()) require_same_grid(grid, pinned.grid(), "init_state");
  pin_in_place(state.v, pinned);
  return state;
}

ChannelMask threshold_mask(const ScalarField& v, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw DomainError("threshold tau = " + std::to_string(tau) + " must lie in (0, 1)");
  }
  ChannelMask mask(v.grid());
  for (std::size_t c = 0; c < v.size(); ++c) mask.set_index(c, v[c] >= tau);
  return mask;
}

}  // namespace coldgen
