#include "coldgen/io_report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "coldgen/errors.hpp"

namespace coldgen {

using nlohmann::json;

namespace {

// Reads the members of one JSON object, remembering which keys were
// consumed so leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(path_, "expected a JSON object");
  }

  bool has(const std::string& key) {
    known_.insert(key);
    return j_.contains(key);
  }

  void number(const std::string& key, double& out) {
    if (!has(key)) return;
    const json& v = j_.at(key);
    if (!v.is_number()) throw ValidationError(name(key), "expected a number");
    out = v.get<double>();
  }

  template <typename Int>
  void integer(const std::string& key, Int& out) {
    if (!has(key)) return;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ValidationError(name(key), "expected an integer");
    if constexpr (std::is_unsigned_v<Int>) {
      if (v.is_number_unsigned()) {
        out = v.get<Int>();
      } else {
        throw ValidationError(name(key), "expected a non-negative integer");
      }
    } else {
      out = v.get<Int>();
    }
  }

  void text(const std::string& key, std::string& out) {
    if (!has(key)) return;
    const json& v = j_.at(key);
    if (!v.is_string()) throw ValidationError(name(key), "expected a string");
    out = v.get<std::string>();
  }

  const json& raw(const std::string& key) {
    known_.insert(key);
    return j_.at(key);
  }

  std::string name(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  /// Rejects keys that were never asked for.
  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!known_.count(key)) throw ValidationError(name(key), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> known_;
};

json grid_to_json(const Grid& g) {
  return {{"nx", g.nx}, {"ny", g.ny}, {"dx", g.dx}, {"dy", g.dy}};
}

json material_to_json(const MaterialParams& m) {
  return {{"k", m.k},
          {"thickness", m.thickness},
          {"t_coolant", m.t_coolant},
          {"h_channel", m.h_channel},
          {"h_base", m.h_base}};
}

json solver_to_json(const SolverOptions& s) { return {{"tol", s.tol}, {"max_iter", s.max_iter}}; }

json rd_to_json(const RDParams& p) {
  return {{"d_u", p.d_u}, {"d_v", p.d_v},   {"f", p.f},
          {"kappa", p.kappa}, {"dt", p.dt}, {"length_unit", p.length_unit}};
}

json loop_to_json(const LoopConfig& l) {
  return {{"outer_rounds", l.outer_rounds},
          {"rd_steps_per_round", l.rd_steps_per_round},
          {"alpha", l.alpha},
          {"f_min", l.f_min},
          {"f_max", l.f_max},
          {"tau", l.tau},
          {"p_seed", l.p_seed},
          {"plateau_tol", l.plateau_tol},
          {"seed", l.seed}};
}

json baseline_to_json(const BaselineParams& b) {
  return {{"channel_width", b.channel_width}, {"pitch", b.pitch}};
}

json tool_json() { return {{"name", tool_name}, {"version", tool_version}}; }

json solver_summary_json(const SolverSummary& s) {
  return {{"converged", s.converged},
          {"iterations", s.iterations},
          {"final_residual", s.final_residual}};
}

std::ofstream open_for_write(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | mode);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void write_json_file(const json& j, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_csv_line(const std::string& line, const std::string& where) {
  std::vector<double> values;
  const char* p = line.data();
  const char* end = p + line.size();
  while (end > p && (end[-1] == '\r' || end[-1] == ' ')) --end;
  while (p <= end) {
    const char* comma = std::find(p, end, ',');
    double x = 0.0;
    const auto res = std::from_chars(p, comma, x);
    if (res.ec != std::errc{} || res.ptr != comma) {
      throw IoError(where + ": cannot parse '" + std::string(p, comma) + "' as a number");
    }
    values.push_back(x);
    if (comma == end) break;
    p = comma + 1;
  }
  return values;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

BoardLayout RunConfig::layout() const {
  BoardLayout layout;
  layout.chips = chips;
  layout.port_width = ports.width;
  layout.inlet = rasterize_port(grid, Edge::j_min, ports.inlet_center_x.value_or(0.5 * grid.width()),
                                ports.width);
  layout.outlet = rasterize_port(grid, Edge::j_max,
                                 ports.outlet_center_x.value_or(0.5 * grid.width()), ports.width);
  return layout;
}

void RunConfig::validate() const {
  if (grid.nx < 3) throw ValidationError("grid.nx", "must be >= 3");
  if (grid.ny < 3) throw ValidationError("grid.ny", "must be >= 3");
  if (!(grid.dx > 0.0)) throw ValidationError("grid.dx", "must be > 0");
  if (!(grid.dy > 0.0)) throw ValidationError("grid.dy", "must be > 0");
  material.validate();
  rd.validate();
  loop.validate();
  baseline.validate();

  if (!(ports.width > 0.0)) throw ValidationError("layout.port_width", "must be > 0");
  BoardLayout resolved;
  try {
    resolved = layout();
  } catch (const DomainError& e) {
    throw ValidationError("layout.port_width", e.what());
  }
  validate_layout(grid, resolved);
  for (std::size_t c = 0; c < chips.size(); ++c) {
    if (rasterize(grid, chips[c].region).empty()) {
      throw ValidationError("layout.chips[" + std::to_string(c) + "]",
                            "covers no cell at this grid resolution");
    }
  }

  const double dt_max = check_stability(rd, grid);
  if (rd.dt > dt_max) {
    throw ValidationError("rd.dt", "exceeds the explicit stability limit " + format_double(dt_max));
  }
  try {
    generate_baseline_parallel(grid, resolved, baseline.channel_width, baseline.pitch);
  } catch (const DomainError& e) {
    throw ValidationError("baseline.channel_width", e.what());
  }
  if (output.heatmap_range && !(output.heatmap_range->first < output.heatmap_range->second)) {
    throw ValidationError("output.heatmap_range", "needs lo < hi");
  }
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  Section root(j, "");

  if (root.has("grid")) {
    Section s(root.raw("grid"), "grid");
    s.integer("nx", cfg.grid.nx);
    s.integer("ny", cfg.grid.ny);
    s.number("dx", cfg.grid.dx);
    s.number("dy", cfg.grid.dy);
    s.finish();
  }
  if (root.has("layout")) {
    Section s(root.raw("layout"), "layout");
    if (s.has("chips")) {
      const json& arr = s.raw("chips");
      if (!arr.is_array()) throw ValidationError("layout.chips", "expected an array");
      cfg.chips.clear();
      for (std::size_t c = 0; c < arr.size(); ++c) {
        Section cs(arr[c], "layout.chips[" + std::to_string(c) + "]");
        Chip chip;
        chip.region.label = "chip" + std::to_string(c);
        cs.text("label", chip.region.label);
        for (const char* key : {"x0", "y0", "x1", "y1", "tdp"}) {
          if (!cs.has(key)) throw ValidationError(cs.name(key), "required");
        }
        cs.number("x0", chip.region.x0);
        cs.number("y0", chip.region.y0);
        cs.number("x1", chip.region.x1);
        cs.number("y1", chip.region.y1);
        cs.number("tdp", chip.tdp);
        cs.finish();
        cfg.chips.push_back(std::move(chip));
      }
    }
    s.number("port_width", cfg.ports.width);
    double center = 0.0;
    if (s.has("inlet_center_x")) {
      s.number("inlet_center_x", center);
      cfg.ports.inlet_center_x = center;
    }
    if (s.has("outlet_center_x")) {
      s.number("outlet_center_x", center);
      cfg.ports.outlet_center_x = center;
    }
    s.finish();
  }
  if (root.has("material")) {
    Section s(root.raw("material"), "material");
    s.number("k", cfg.material.k);
    s.number("thickness", cfg.material.thickness);
    s.number("t_coolant", cfg.material.t_coolant);
    s.number("h_channel", cfg.material.h_channel);
    s.number("h_base", cfg.material.h_base);
    s.finish();
  }
  if (root.has("solver")) {
    Section s(root.raw("solver"), "solver");
    s.number("tol", cfg.loop.solver.tol);
    s.integer("max_iter", cfg.loop.solver.max_iter);
    s.finish();
  }
  if (root.has("rd")) {
    Section s(root.raw("rd"), "rd");
    s.number("d_u", cfg.rd.d_u);
    s.number("d_v", cfg.rd.d_v);
    s.number("f", cfg.rd.f);
    s.number("kappa", cfg.rd.kappa);
    s.number("dt", cfg.rd.dt);
    s.number("length_unit", cfg.rd.length_unit);
    s.finish();
  }
  if (root.has("loop")) {
    Section s(root.raw("loop"), "loop");
    s.integer("outer_rounds", cfg.loop.outer_rounds);
    s.integer("rd_steps_per_round", cfg.loop.rd_steps_per_round);
    s.number("alpha", cfg.loop.alpha);
    s.number("f_min", cfg.loop.f_min);
    s.number("f_max", cfg.loop.f_max);
    s.number("tau", cfg.loop.tau);
    s.number("p_seed", cfg.loop.p_seed);
    s.number("plateau_tol", cfg.loop.plateau_tol);
    s.integer("seed", cfg.loop.seed);
    s.finish();
  }
  if (root.has("baseline")) {
    Section s(root.raw("baseline"), "baseline");
    s.number("channel_width", cfg.baseline.channel_width);
    s.number("pitch", cfg.baseline.pitch);
    s.finish();
  }
  if (root.has("output")) {
    Section s(root.raw("output"), "output");
    if (s.has("heatmap_range")) {
      const json& r = s.raw("heatmap_range");
      if (!r.is_null()) {
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
          throw ValidationError("output.heatmap_range", "expected [lo, hi] or null");
        }
        cfg.output.heatmap_range = std::pair{r[0].get<double>(), r[1].get<double>()};
      }
    }
    s.finish();
  }
  root.finish();
  cfg.validate();
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json chips = json::array();
  for (const auto& c : cfg.chips) {
    chips.push_back({{"label", c.region.label},
                     {"x0", c.region.x0},
                     {"y0", c.region.y0},
                     {"x1", c.region.x1},
                     {"y1", c.region.y1},
                     {"tdp", c.tdp}});
  }
  json layout = {{"chips", chips}, {"port_width", cfg.ports.width}};
  if (cfg.ports.inlet_center_x) layout["inlet_center_x"] = *cfg.ports.inlet_center_x;
  if (cfg.ports.outlet_center_x) layout["outlet_center_x"] = *cfg.ports.outlet_center_x;
  json range = nullptr;
  if (cfg.output.heatmap_range) {
    range = json::array({cfg.output.heatmap_range->first, cfg.output.heatmap_range->second});
  }
  return {{"grid", grid_to_json(cfg.grid)},
          {"layout", layout},
          {"material", material_to_json(cfg.material)},
          {"solver", solver_to_json(cfg.loop.solver)},
          {"rd", rd_to_json(cfg.rd)},
          {"loop", loop_to_json(cfg.loop)},
          {"baseline", baseline_to_json(cfg.baseline)},
          {"output", {{"heatmap_range", range}}}};
}

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed config JSON: ") + e.what());
  }
  return config_from_json(j);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

// ---------------------------------------------------------------------------
// CSV

void export_field_csv(const ScalarField& field, const std::filesystem::path& path) {
  const Grid& g = field.grid();
  auto out = open_for_write(path);
  out << g.nx << ',' << g.ny << ',' << format_double(g.dx) << ',' << format_double(g.dy) << '\n';
  std::string line;
  for (int j = 0; j < g.ny; ++j) {
    line.clear();
    for (int i = 0; i < g.nx; ++i) {
      if (i > 0) line += ',';
      line += format_double(field.at(i, j));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

ScalarField import_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  const std::string where = path.string();
  std::string line;
  if (!std::getline(in, line)) throw IoError(where + ": missing header");
  const auto header = parse_csv_line(line, where);
  if (header.size() != 4) throw IoError(where + ": header must be nx,ny,dx,dy");
  Grid grid{static_cast<int>(header[0]), static_cast<int>(header[1]), header[2], header[3]};
  if (grid.nx != header[0] || grid.ny != header[1]) {
    throw IoError(where + ": nx and ny must be integers");
  }
  try {
    grid.validate();
  } catch (const DomainError& e) {
    throw IoError(where + ": " + e.what());
  }
  std::vector<double> values;
  values.reserve(grid.cells());
  for (int j = 0; j < grid.ny; ++j) {
    if (!std::getline(in, line)) throw IoError(where + ": expected " + std::to_string(grid.ny) + " rows");
    const auto row = parse_csv_line(line, where);
    if (row.size() != static_cast<std::size_t>(grid.nx)) {
      throw IoError(where + ": row " + std::to_string(j) + " has " + std::to_string(row.size()) +
                    " values, expected " + std::to_string(grid.nx));
    }
    values.insert(values.end(), row.begin(), row.end());
  }
  return ScalarField(grid, std::move(values));
}

void export_mask_csv(const ChannelMask& mask, const std::filesystem::path& path) {
  export_field_csv(mask.to_field(), path);
}

ChannelMask import_mask_csv(const std::filesystem::path& path) {
  return ChannelMask::from_field(import_field_csv(path));
}

// ---------------------------------------------------------------------------
// PGM

std::uint8_t quantize_pixel(double value, double lo, double hi) {
  if (!(hi > lo) || std::isnan(value)) return 0;
  const double scaled = std::floor((value - lo) / (hi - lo) * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

std::vector<std::uint8_t> heatmap_pixels(const ScalarField& field,
                                         std::optional<std::pair<double, double>> range) {
  const auto [lo, hi] = range.value_or(std::pair{field.min(), field.max()});
  if (hi < lo) throw DomainError("heatmap range needs lo <= hi");
  std::vector<std::uint8_t> pixels(field.size());
  for (std::size_t c = 0; c < field.size(); ++c) pixels[c] = quantize_pixel(field[c], lo, hi);
  return pixels;
}

void export_heatmap(const ScalarField& field, const std::filesystem::path& path,
                    std::optional<std::pair<double, double>> range) {
  const auto pixels = heatmap_pixels(field, range);
  auto out = open_for_write(path, std::ios::binary);
  out << "P5\n" << field.grid().nx << ' ' << field.grid().ny << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Reports

json metrics_to_json(const ThermalMetrics& m) {
  json per_chip = json::array();
  for (const auto& r : m.per_chip) {
    per_chip.push_back({{"label", r.label}, {"max_c", r.max_c}, {"mean_c", r.mean_c}});
  }
  return {{"max_c", m.max_c},
          {"mean_c", m.mean_c},
          {"chips", {{"max_c", m.chips.max_c}, {"mean_c", m.chips.mean_c}}},
          {"per_chip", per_chip}};
}

json report_to_json(const DesignReport& r) {
  json history = json::array();
  for (const auto& h : r.history) {
    history.push_back({{"round", h.round},
                       {"mean_c", h.mean_c},
                       {"max_c", h.max_c},
                       {"fill_fraction", h.fill_fraction},
                       {"solver_converged", h.solver_converged},
                       {"solver_iterations", h.solver_iterations}});
  }
  json config = {{"material", material_to_json(r.material)}};
  if (r.rd) config["rd"] = rd_to_json(*r.rd);
  if (r.loop) {
    config["loop"] = loop_to_json(*r.loop);
    config["solver"] = solver_to_json(r.loop->solver);
  }
  if (r.baseline) config["baseline"] = baseline_to_json(*r.baseline);
  return {{"tool", tool_json()},
          {"kind", "design"},
          {"name", r.name},
          {"grid", grid_to_json(r.mask.grid())},
          {"metrics", metrics_to_json(r.metrics)},
          {"fill_fraction", r.fill_fraction},
          {"solver", solver_summary_json(r.solver)},
          {"history", history},
          {"config", config}};
}

json report_to_json(const ComparisonReport& r) {
  const auto design = [](const DesignSummary& d) {
    return json{{"name", d.name},
                {"metrics", metrics_to_json(d.metrics)},
                {"fill_fraction", d.fill_fraction},
                {"solver", solver_summary_json(d.solver)}};
  };
  return {{"tool", tool_json()},
          {"kind", "comparison"},
          {"design_a", design(r.a)},
          {"design_b", design(r.b)},
          {"delta_mean_c", r.delta_mean_c},
          {"delta_max_c", r.delta_max_c},
          {"delta_convention", "design_a - design_b"},
          {"config", {{"material", material_to_json(r.material)}}}};
}

void write_report_json(const DesignReport& report, const std::filesystem::path& path) {
  write_json_file(report_to_json(report), path);
}

void write_report_json(const ComparisonReport& report, const std::filesystem::path& path) {
  write_json_file(report_to_json(report), path);
}

}  // namespace coldgen
