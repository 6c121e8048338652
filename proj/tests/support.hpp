#pragma once

// Test-only helpers: the dense direct-solve oracle for the discrete heat
// balance, random field generators and scratch directories.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>
#include <unistd.h>

#include "coldgen/coldgen.hpp"

namespace coldgen::testing {

// Assembles, for every cell,
//   rx (T_l + T_r) + ry (T_d + T_u) - (2 rx + 2 ry + h) T + Q + h T_coolant = 0
// with out-of-domain neighbors replaced by the cell itself, and solves the
// system with a dense LU factorization.
inline ScalarField dense_steady_solution(const ScalarField& q, const ScalarField& h,
                                         const MaterialParams& m) {
  const Grid& g = q.grid();
  const auto n = static_cast<Eigen::Index>(g.cells());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b(n);
  const double rx = m.k * m.thickness / (g.dx * g.dx);
  const double ry = m.k * m.thickness / (g.dy * g.dy);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const auto row = static_cast<Eigen::Index>(g.index(i, j));
      const auto col = [&](int ii, int jj) {
        ii = ii < 0 ? 0 : (ii >= g.nx ? g.nx - 1 : ii);
        jj = jj < 0 ? 0 : (jj >= g.ny ? g.ny - 1 : jj);
        return static_cast<Eigen::Index>(g.index(ii, jj));
      };
      a(row, col(i - 1, j)) += rx;
      a(row, col(i + 1, j)) += rx;
      a(row, col(i, j - 1)) += ry;
      a(row, col(i, j + 1)) += ry;
      a(row, row) -= 2.0 * rx + 2.0 * ry + h.at(i, j);
      b(row) = -(q.at(i, j) + h.at(i, j) * m.t_coolant);
    }
  }
  const Eigen::VectorXd t = a.partialPivLu().solve(b);
  ScalarField out(g);
  for (Eigen::Index c = 0; c < n; ++c) out[static_cast<std::size_t>(c)] = t(c);
  return out;
}

inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double d = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) d = std::max(d, std::abs(a[c] - b[c]));
  return d;
}

inline ScalarField random_field(const Grid& g, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  ScalarField f(g);
  for (auto& x : f.values()) x = dist(rng);
  return f;
}

inline ChannelMask random_mask(const Grid& g, std::mt19937_64& rng, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  ChannelMask m(g);
  for (std::size_t c = 0; c < m.size(); ++c) m.set_index(c, coin(rng));
  return m;
}

/// Removed with its contents on destruction.
class ScratchDir {
 public:
  ScratchDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("coldgen_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

/// A small board that runs the whole loop in well under a second.
inline const char* small_config_json = R"({
  "grid": {"nx": 40, "ny": 50, "dx": 0.001, "dy": 0.001},
  "layout": {
    "chips": [
      {"label": "GPU_L", "x0": 0.004, "y0": 0.006, "x1": 0.018, "y1": 0.020, "tdp": 150},
      {"label": "GPU_R", "x0": 0.022, "y0": 0.006, "x1": 0.036, "y1": 0.020, "tdp": 150},
      {"label": "CPU", "x0": 0.013, "y0": 0.032, "x1": 0.027, "y1": 0.044, "tdp": 40}
    ],
    "port_width": 0.01
  },
  "loop": {"outer_rounds": 3, "rd_steps_per_round": 300}
})";

}  // namespace coldgen::testing
