// twobody: solve, analyze, sweep and figure reproduction for two trapped
// atoms with a finite-range interaction.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "twobody/sweep.hpp"

namespace fs = std::filesystem;
using namespace twobody;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;
constexpr const char* kOutDirEnv = "TWOBODY_OUT_DIR";

struct Options {
  std::string kappa_text;
  std::optional<double> sigma;
  std::string config_path;
  std::string out_dir;
  std::string format = "csv";
  std::optional<int> workers;
  std::string figure;
  std::string manifest_path;
};

struct Resolved {
  SystemParams params;
  std::map<std::string, std::string> overrides;
  NumericsConfig cfg;
  ConfigFile file;
};

std::string default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env && *env ? env : "out";
}

// Defaults < config file < flags.
Resolved resolve(const Options& opt) {
  Resolved r;
  if (!opt.config_path.empty()) r.file = load_config(opt.config_path);
  if (r.file.kappa) r.params.kappa = *r.file.kappa;
  if (r.file.sigma) r.params.sigma = *r.file.sigma;
  if (!opt.kappa_text.empty()) r.params.kappa = Strength::parse(opt.kappa_text);
  if (opt.sigma) r.params.sigma = *opt.sigma;
  r.overrides = r.file.numerics;
  if (opt.workers) r.overrides["workers"] = std::to_string(*opt.workers);
  r.cfg = resolve_numerics(r.overrides, r.params.sigma);
  if (auto report = validate(r.params, r.cfg); !report.ok())
    throw InvalidArgument("invalid input: " + report.summary());
  return r;
}

std::string render(const Table& t, const std::string& format) {
  return format == "json" ? t.to_json() : t.to_csv();
}

std::string ext(const std::string& format) { return format == "json" ? ".json" : ".csv"; }

std::string point_dir(const Options& opt, const std::string& command, const SystemParams& p) {
  return (fs::path(opt.out_dir) /
          (command + "_kappa" + p.kappa.to_string() + "_sigma" + format_real(p.sigma)))
      .string();
}

int cmd_solve(const Options& opt) {
  const Resolved r = resolve(opt);
  RadialSolution sol;
  try {
    sol = solve_ground_state(r.params, r.cfg);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  }
  const std::string dir = point_dir(opt, "solve", r.params);
  const std::string path = (fs::path(dir) / ("profile" + ext(opt.format))).string();
  write_file(path, render(profile_table(sol), opt.format));
  write_file((fs::path(dir) / "config.txt").string(), to_config_text(r.params, r.cfg));
  if (opt.format == "json") {
    Table t;
    t.header = {"kappa", "sigma", "E_rel"};
    t.rows.push_back({r.params.kappa.to_string(), format_real(r.params.sigma),
                      format_real(sol.energy)});
    std::cout << t.to_json();
  } else {
    std::cout << "E_rel = " << format_real(sol.energy) << '\n';
  }
  std::cerr << "profile written to " << path << '\n';
  return kExitOk;
}

int cmd_analyze(const Options& opt) {
  const Resolved r = resolve(opt);
  PointAnalysis a;
  try {
    a = analyze_point(r.params, r.cfg);
  } catch (const InvalidArgument&) {
    throw;
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  }
  const SweepPoint point = summarize(a);
  const Table observables = sweep_table({point});
  const fs::path dir = point_dir(opt, "analyze", r.params);
  const std::string e = ext(opt.format);
  write_file((dir / ("observables" + e)).string(), render(observables, opt.format));
  write_file((dir / ("spectrum" + e)).string(), render(spectrum_rows(a.spectrum), opt.format));
  write_file((dir / ("spectrum_summary" + e)).string(),
             render(spectrum_summary(a.spectrum), opt.format));
  write_file((dir / ("decomposition" + e)).string(),
             render(decomposition_table({point}), opt.format));
  write_file((dir / ("profile" + e)).string(), render(profile_table(a.solution), opt.format));
  write_file((dir / ("radial_density" + e)).string(),
             render(radial_density_table(a.grid), opt.format));
  write_file((dir / ("angular_density" + e)).string(),
             render(angular_density_table(a.grid), opt.format));
  write_file((dir / "config.txt").string(), to_config_text(r.params, r.cfg));
  std::cout << render(observables, opt.format);
  if (point.status != PointStatus::ok) std::cerr << "warning: status " << to_string(point.status) << '\n';
  std::cerr << "results written to " << dir.string() << '\n';
  return kExitOk;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

double parse_real(const std::string& key, const std::string& text) {
  const Strength s = Strength::parse(text);
  if (s.is_hardcore()) throw InvalidArgument("'" + key + "' must be finite");
  return s.value();
}

// "a,b,c" or "first:last:step".
std::vector<std::string> grid_values(const std::string& key, const std::string& text) {
  if (text.find(':') == std::string::npos) return split_list(text);
  std::stringstream ss(text);
  std::string a, b, c;
  std::getline(ss, a, ':');
  std::getline(ss, b, ':');
  std::getline(ss, c);
  std::vector<std::string> out;
  for (double v : linspace_step(parse_real(key, a), parse_real(key, b), parse_real(key, c)))
    out.push_back(format_real(v));
  return out;
}

int cmd_sweep(const Options& opt) {
  SweepManifest from_manifest;
  std::vector<SystemParams> grid;
  std::map<std::string, std::string> overrides;
  std::string name = "sweep";
  int workers = 1;
  if (!opt.manifest_path.empty()) {
    std::ifstream in(opt.manifest_path);
    if (!in) throw InvalidArgument("cannot open manifest '" + opt.manifest_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    from_manifest = manifest_from_json(ss.str());
    grid = from_manifest.grid;
    overrides = from_manifest.overrides;
    name = from_manifest.name;
    workers = from_manifest.workers;
  } else {
    if (opt.config_path.empty())
      throw InvalidArgument("sweep needs --config with kappa_values and sigma_values, or --manifest");
    const ConfigFile file = load_config(opt.config_path);
    overrides = file.numerics;
    auto get = [&](const char* key, const std::string& fallback) {
      auto it = file.extra.find(key);
      return it == file.extra.end() ? fallback : it->second;
    };
    const std::string kappas = get("kappa_values", file.kappa ? file.kappa->to_string() : "");
    const std::string sigmas =
        get("sigma_values", file.sigma ? format_real(*file.sigma) : "");
    if (kappas.empty() || sigmas.empty())
      throw InvalidArgument("sweep config needs kappa_values and sigma_values");
    name = get("name", "sweep");
    for (const auto& s : grid_values("sigma_values", sigmas))
      for (const auto& k : grid_values("kappa_values", kappas))
        grid.push_back({Strength::parse(k), parse_real("sigma_values", s)});
    if (auto it = overrides.find("workers"); it != overrides.end()) workers = std::stoi(it->second);
  }
  if (opt.workers) workers = *opt.workers;
  overrides.erase("workers");
  for (const auto& p : grid) {
    NumericsConfig cfg = resolve_numerics(overrides, p.sigma);
    cfg.workers = workers;
    if (auto report = validate(p, cfg); !report.ok())
      throw InvalidArgument("invalid grid point: " + report.summary());
  }

  const SweepResult result = run_sweep(grid, overrides, workers, name);
  const fs::path dir = fs::path(opt.out_dir) / name;
  const std::string e = ext(opt.format);
  write_file((dir / (name + e)).string(), render(sweep_table(result.points), opt.format));
  write_file((dir / ("decomposition" + e)).string(),
             render(decomposition_table(result.points), opt.format));
  write_file((dir / "manifest.json").string(), manifest_to_json(result.manifest));
  int failed = 0;
  for (const auto& p : result.points) failed += p.status != PointStatus::ok;
  std::cerr << result.points.size() << " points, " << failed << " not ok; written to "
            << dir.string() << '\n';
  return kExitOk;
}

int cmd_figure(const Options& opt) {
  figure_preset(opt.figure);  // unknown names are usage errors before any work
  std::map<std::string, std::string> overrides;
  int workers = 1;
  if (!opt.config_path.empty()) overrides = load_config(opt.config_path).numerics;
  if (auto it = overrides.find("workers"); it != overrides.end()) workers = std::stoi(it->second);
  if (opt.workers) workers = *opt.workers;
  overrides.erase("workers");
  const auto paths = emit_figure(opt.figure, overrides, workers, opt.out_dir);
  if (opt.format == "json") {
    std::ifstream in(paths.front());
    Table t;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (header) t.header = split_list(line);
      else t.rows.push_back(split_list(line));
      header = false;
    }
    const std::string json_path = (fs::path(paths.front()).replace_extension(".json")).string();
    write_file(json_path, t.to_json());
    std::cerr << "wrote " << json_path << '\n';
  }
  for (const auto& p : paths) std::cerr << "wrote " << p << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground state and entanglement analysis of two trapped atoms with a\n"
               "finite-range interaction of strength kappa and range sigma."};
  app.require_subcommand(1, 1);
  app.footer(std::string("Exit codes: 0 success, 2 invalid input, 3 solver convergence failure.\n"
                         "Default --out-dir comes from $") +
             kOutDirEnv + " (else ./out).");

  Options opt;
  opt.out_dir = default_out_dir();

  auto add_common = [&](CLI::App* sub, bool point) {
    if (point) {
      sub->add_option("--kappa", opt.kappa_text, "interaction strength (real or inf)");
      sub->add_option("--sigma", opt.sigma, "interaction range (>= 0)");
    }
    sub->add_option("--config", opt.config_path, "key=value config file");
    sub->add_option("--out-dir", opt.out_dir, "output directory")->capture_default_str();
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* solve = app.add_subcommand("solve", "relative-motion ground state; prints E_rel");
  add_common(solve, true);
  auto* analyze = app.add_subcommand("analyze", "full observable set for one (kappa, sigma)");
  add_common(analyze, true);
  auto* sweep = app.add_subcommand("sweep", "grid sweep from config (kappa_values, sigma_values)");
  add_common(sweep, false);
  sweep->add_option("--manifest", opt.manifest_path, "rerun the sweep recorded in a manifest");
  auto* figure = app.add_subcommand("figure", "reproduce a figure data set");
  add_common(figure, false);
  figure->add_option("name", opt.figure, "fig1a|fig1b|fig1c|fig1d|fig2|fig3")->required();

  if (argc <= 1) {
    std::cerr << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(opt);
    if (*analyze) return cmd_analyze(opt);
    if (*sweep) return cmd_sweep(opt);
    if (*figure) return cmd_figure(opt);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
