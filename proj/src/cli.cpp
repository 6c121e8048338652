#include "coldgen/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "coldgen/coldgen.hpp"

namespace coldgen::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::string mask_path;
  int verbosity = 0;
};

class Session {
 public:
  Session(const Options& opts, RunConfig config, std::ostream& out, std::ostream& err)
      : opts_(opts), cfg_(std::move(config)), layout_(cfg_.layout()), out_(out), err_(err) {}

  void log(int level, const std::string& msg) const {
    if (opts_.verbosity >= level) err_ << "[coldgen] " << msg << '\n';
  }

  fs::path path(const std::string& name) const { return fs::path(opts_.out_dir) / name; }

  void write_design(const std::string& prefix, const DesignReport& r) const {
    export_mask_csv(r.mask, path(prefix + "_mask.csv"));
    export_field_csv(r.temperature, path(prefix + "_temperature.csv"));
    export_heatmap(r.temperature, path(prefix + "_temperature.pgm"), cfg_.output.heatmap_range);
    if (r.v) export_field_csv(*r.v, path(prefix + "_v.csv"));
    write_report_json(r, path(prefix + "_report.json"));
    log(1, "wrote " + prefix + "_* to " + opts_.out_dir);
  }

  void summarize(const DesignReport& r) const {
    std::ostringstream line;
    line << std::fixed << std::setprecision(2) << r.name << ": max " << r.metrics.max_c
         << " C, mean " << r.metrics.mean_c << " C, fill " << std::setprecision(3)
         << r.fill_fraction << ", solver "
         << (r.solver.converged ? "converged" : "NOT converged") << " after "
         << r.solver.iterations << " iterations";
    out_ << line.str() << '\n';
  }

  DesignReport baseline() const {
    log(1, "building baseline parallel channels");
    const ChannelMask mask = generate_baseline_parallel(cfg_.grid, layout_, cfg_.baseline.channel_width,
                                                        cfg_.baseline.pitch);
    DesignReport r = evaluate_mask("baseline", mask, layout_, cfg_.material, cfg_.loop.solver);
    r.baseline = cfg_.baseline;
    summarize(r);
    return r;
  }

  DesignReport generate() const {
    log(1, "running generative loop: " + std::to_string(cfg_.loop.outer_rounds) + " rounds x " +
               std::to_string(cfg_.loop.rd_steps_per_round) + " RD steps, seed " +
               std::to_string(cfg_.loop.seed));
    DesignReport r = run_generative_design(cfg_.grid, layout_, cfg_.material, cfg_.rd, cfg_.loop);
    for (const auto& h : r.history) {
      std::ostringstream msg;
      msg << "round " << h.round << ": max " << h.max_c << " C, mean " << h.mean_c
          << " C, fill " << h.fill_fraction;
      log(2, msg.str());
    }
    summarize(r);
    return r;
  }

  ComparisonReport compare(const DesignReport& a, const DesignReport& b) const {
    ComparisonReport c = compare_designs(a, b);
    write_report_json(c, path("comparison_report.json"));
    std::ostringstream line;
    line << std::fixed << std::setprecision(2) << "compare " << a.name << " - " << b.name
         << ": delta max " << c.delta_max_c << " C, delta mean " << c.delta_mean_c << " C";
    out_ << line.str() << '\n';
    return c;
  }

  DesignReport solve_mask() const {
    const ChannelMask mask = import_mask_csv(opts_.mask_path);
    if (!(mask.grid() == cfg_.grid)) {
      throw ValidationError("mask", "grid in '" + opts_.mask_path + "' does not match the config grid");
    }
    DesignReport r = evaluate_mask("external", mask, layout_, cfg_.material, cfg_.loop.solver);
    summarize(r);
    return r;
  }

  const RunConfig& config() const { return cfg_; }

 private:
  const Options& opts_;
  RunConfig cfg_;
  BoardLayout layout_;
  std::ostream& out_;
  std::ostream& err_;
};

int status_of(std::initializer_list<const DesignReport*> reports) {
  for (const auto* r : reports) {
    if (!r->solver.converged) return not_converged;
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cold-plate channel synthesis with a reaction-diffusion generator", "coldgen"};
  Options opts;
  app.add_option("--config", opts.config_path, "JSON run configuration (defaults if omitted)");
  app.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", opts.seed, "RNG seed; overrides loop.seed from the config");
  app.add_flag("-v", opts.verbosity, "Verbose diagnostics on stderr (-vv for per-round detail)");
  app.require_subcommand(1, 1);

  auto* baseline = app.add_subcommand("baseline", "Solve the parallel-channel baseline");
  auto* generate = app.add_subcommand("generate", "Run the closed-loop generative design");
  auto* solve = app.add_subcommand("solve", "Solve a channel mask given as CSV");
  solve->add_option("--mask", opts.mask_path, "Mask CSV ({0,1} field)")->required();
  auto* compare = app.add_subcommand("compare", "Compare baseline and generative designs");
  auto* pipeline = app.add_subcommand("pipeline", "baseline + generate + compare");
  for (auto* sub : {baseline, generate, solve, compare, pipeline}) sub->fallthrough();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "coldgen: " << e.what() << '\n';
    return config_error;
  }

  apply_thread_env();

  std::optional<Session> session;
  try {
    RunConfig cfg = opts.config_path.empty() ? RunConfig{} : load_config(opts.config_path);
    if (opts.seed) cfg.loop.seed = *opts.seed;
    cfg.validate();
    fs::create_directories(opts.out_dir);
    session.emplace(opts, std::move(cfg), out, err);
  } catch (const Error& e) {
    err << "coldgen: config error: " << e.what() << '\n';
    return config_error;
  } catch (const fs::filesystem_error& e) {
    err << "coldgen: " << e.what() << '\n';
    return config_error;
  }
  session->log(1, "threads: " + std::to_string(thread_count()));

  try {
    if (baseline->parsed()) {
      const auto b = session->baseline();
      session->write_design("baseline", b);
      return status_of({&b});
    }
    if (generate->parsed()) {
      const auto g = session->generate();
      session->write_design("generative", g);
      return status_of({&g});
    }
    if (solve->parsed()) {
      const auto s = session->solve_mask();
      session->write_design("solve", s);
      return status_of({&s});
    }
    const auto b = session->baseline();
    if (pipeline->parsed()) session->write_design("baseline", b);
    const auto g = session->generate();
    if (pipeline->parsed()) session->write_design("generative", g);
    session->compare(b, g);
    return status_of({&b, &g});
  } catch (const InstabilityError& e) {
    err << "coldgen: reaction-diffusion instability: " << e.what() << '\n';
    return rd_unstable;
  } catch (const Error& e) {
    err << "coldgen: " << e.what() << '\n';
    return config_error;
  }
}

}  // namespace coldgen::cli
