#include "twobody/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace twobody {

namespace {

using json = nlohmann::json;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class F>
auto run_stage(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::optional<double> as_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

PointStatus status_from_string(const std::string& s) {
  if (s == "ok") return PointStatus::ok;
  if (s == "under_converged") return PointStatus::under_converged;
  if (s == "solver_failed") return PointStatus::solver_failed;
  throw InvalidArgument("unknown point status '" + s + "'");
}

std::string f_column(int l) { return "f" + std::to_string(l); }

// Cell of one named column for one sweep point.
std::string cell(const SweepPoint& p, const std::string& column) {
  const Observables& o = p.obs;
  const Diagnostics& d = p.diag;
  if (column == "kappa") return p.params.kappa.to_string();
  if (column == "sigma") return format_real(p.params.sigma);
  if (column == "status") return to_string(p.status);
  if (column == "stage") return p.failed_stage;
  if (column == "flags") {
    std::string out;
    for (const auto& f : d.flags) out += (out.empty() ? "" : ";") + f;
    return out;
  }
  if (column == "E_rel") return format_real(o.E_rel);
  if (column == "K") return format_real(o.K);
  if (column == "purity") return format_real(o.purity);
  if (column == "gamma0") return format_real(o.gamma0);
  if (column == "gamma1") return format_real(o.gamma1);
  if (column == "K_r") return format_real(o.K_r);
  if (column == "K_phi") return format_real(o.K_phi);
  if (column == "r_peak") return format_real(o.r_peak);
  if (column == "completeness_residual") return format_real(d.completeness_residual);
  if (column == "tail_mass") return format_real(d.tail_mass);
  if (column == "norm_residual") return format_real(d.norm_residual);
  if (column == "m_sine") return std::to_string(d.m_sine_used);
  for (int l = 0; l < kReportedChannels; ++l)
    if (column == f_column(l)) return format_real(o.f[l]);
  throw InvalidArgument("unknown column '" + column + "'");
}

std::vector<std::string> sweep_columns() {
  std::vector<std::string> cols = {"kappa", "sigma", "status", "stage", "E_rel", "K", "purity"};
  for (int l = 0; l < kReportedChannels; ++l) cols.push_back(f_column(l));
  for (const char* c : {"gamma0", "gamma1", "K_r", "K_phi", "r_peak", "completeness_residual",
                        "tail_mass", "norm_residual", "m_sine", "flags"})
    cols.push_back(c);
  return cols;
}

Table point_table(const std::vector<SweepPoint>& points, const std::vector<std::string>& cols) {
  Table t;
  t.header = cols;
  for (const auto& p : points) {
    std::vector<std::string> row;
    for (const auto& c : cols) row.push_back(cell(p, c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::string> f_columns() {
  std::vector<std::string> cols;
  for (int l = 0; l < kReportedChannels; ++l) cols.push_back(f_column(l));
  return cols;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

std::string to_string(PointStatus status) {
  switch (status) {
    case PointStatus::ok: return "ok";
    case PointStatus::under_converged: return "under_converged";
    case PointStatus::solver_failed: return "solver_failed";
  }
  return "unknown";
}

PointAnalysis analyze_point(const SystemParams& params, const NumericsConfig& cfg) {
  if (auto report = validate(params, cfg); !report.ok())
    throw InvalidArgument("invalid input: " + report.summary());
  PointAnalysis a;
  a.params = params;
  a.cfg = cfg;
  a.solution = run_stage("solve", [&] { return solve_ground_state(params, cfg); });
  a.r_peak = relative_profile_peak(a.solution);
  a.grid = run_stage("assemble", [&] { return assemble(params, cfg, a.solution); });
  a.channels = run_stage("channels", [&] { return compute_channels(a.grid); });
  a.spectrum = run_stage("particle_spectrum", [&] { return spectrum(a.channels); });
  a.purity_integral = purity_integral(a.channels);
  a.W = run_stage("pair_basis", [&] { return build_W(a.channels, cfg); });
  a.decomposition =
      run_stage("radial_angular", [&] { return decompose(a.W, a.channels.radial); });
  a.product = product_error(a.channels, a.W, a.decomposition);
  return a;
}

SweepPoint summarize(const PointAnalysis& a) {
  SweepPoint p;
  p.params = a.params;
  Observables& o = p.obs;
  Diagnostics& d = p.diag;
  o.E_rel = a.solution.energy;
  o.K = a.spectrum.participation;
  o.purity = a.spectrum.purity;
  for (int l = 0; l < kReportedChannels; ++l)
    o.f[l] = l < static_cast<int>(a.spectrum.f.size()) ? a.spectrum.f[l] : 0.0;
  o.gamma0 = a.decomposition.gamma.empty() ? kNaN : a.decomposition.gamma[0];
  o.gamma1 = a.decomposition.gamma.size() > 1 ? a.decomposition.gamma[1] : 0.0;
  o.K_r = a.decomposition.K_r;
  o.K_phi = a.decomposition.K_phi;
  o.r_peak = a.r_peak;

  d.completeness_residual = a.W.completeness_residual;
  d.tail_mass = a.spectrum.tail_mass;
  d.norm_residual = a.grid.norm_residual;
  d.probability_sum = a.spectrum.probability;
  d.gamma_sum = 0.0;
  for (double g : a.decomposition.gamma) d.gamma_sum += g;
  d.purity_integral = a.purity_integral;
  d.product_error_spectral = a.product.spectral;
  d.product_error_quadrature = a.product.quadrature;
  d.m_sine_used = a.W.m_sine;

  std::vector<double> all = {o.E_rel, o.K, o.purity, o.gamma0, o.gamma1, o.K_r, o.K_phi, o.r_peak};
  all.insert(all.end(), o.f.begin(), o.f.end());
  if (!std::all_of(all.begin(), all.end(), [](double x) { return std::isfinite(x); }))
    d.flags.push_back("non_finite");
  if (a.spectrum.under_converged) d.flags.push_back("tail_mass");
  if (a.W.under_converged) d.flags.push_back("completeness");
  if (d.norm_residual > 1e-6) d.flags.push_back("norm");
  if (std::abs(d.probability_sum - 1.0) > kSumRuleTolerance) d.flags.push_back("probability_sum");
  if (std::abs(d.gamma_sum - 1.0) > kSumRuleTolerance) d.flags.push_back("gamma_sum");
  if (std::abs(o.purity - d.purity_integral) > kPurityRouteTolerance * o.purity)
    d.flags.push_back("purity_routes");
  if (a.product.inconsistent) d.flags.push_back("product_error");
  p.status = d.flags.empty() ? PointStatus::ok : PointStatus::under_converged;
  return p;
}

SweepPoint run_point(const SystemParams& params, const NumericsConfig& cfg) {
  try {
    return summarize(analyze_point(params, cfg));
  } catch (const std::exception& e) {
    SweepPoint p;
    p.params = params;
    p.status = PointStatus::solver_failed;
    auto* stage_error = dynamic_cast<const StageError*>(&e);
    p.failed_stage = stage_error ? stage_error->stage() : "validate";
    p.message = e.what();
    Observables& o = p.obs;
    o.E_rel = o.K = o.purity = o.gamma0 = o.gamma1 = o.K_r = o.K_phi = o.r_peak = kNaN;
    o.f.fill(kNaN);
    Diagnostics& d = p.diag;
    d.completeness_residual = d.tail_mass = d.norm_residual = kNaN;
    return p;
  }
}

SweepResult run_sweep(const std::vector<SystemParams>& grid,
                      const std::map<std::string, std::string>& overrides, int workers,
                      const std::string& name) {
  if (grid.empty()) throw InvalidArgument("sweep grid is empty");
  if (workers < 1) throw InvalidArgument("workers >= 1");
  SweepResult result;
  result.points.resize(grid.size());
  // Validate the overrides once so a typo is a usage error, not N failures.
  for (const auto& p : grid) resolve_numerics(overrides, p.sigma);

  const auto start = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i) {
    NumericsConfig cfg = resolve_numerics(overrides, grid[i].sigma);
    cfg.workers = 1;
    result.points[i] = run_point(grid[i], cfg);
  }
  const auto stop = std::chrono::steady_clock::now();

  SweepManifest& m = result.manifest;
  m.name = name;
  m.overrides = overrides;
  m.grid = grid;
  m.workers = workers;
  for (const auto& p : result.points) m.statuses.push_back(p.status);
  m.wall_seconds = std::chrono::duration<double>(stop - start).count();
  return result;
}

std::string manifest_to_json(const SweepManifest& m) {
  json j;
  j["name"] = m.name;
  j["code_version"] = m.code_version;
  j["config"] = m.overrides;
  json grid = json::array();
  for (const auto& p : m.grid) grid.push_back({{"kappa", p.kappa.to_string()}, {"sigma", p.sigma}});
  j["grid"] = grid;
  j["workers"] = m.workers;
  json statuses = json::array();
  for (auto s : m.statuses) statuses.push_back(to_string(s));
  j["statuses"] = statuses;
  j["wall_seconds"] = m.wall_seconds;
  return j.dump(2) + "\n";
}

SweepManifest manifest_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("manifest is not valid JSON: ") + e.what());
  }
  try {
    SweepManifest m;
    m.name = j.at("name").get<std::string>();
    m.code_version = j.at("code_version").get<std::string>();
    m.overrides = j.at("config").get<std::map<std::string, std::string>>();
    for (const auto& p : j.at("grid"))
      m.grid.push_back({Strength::parse(p.at("kappa").get<std::string>()),
                        p.at("sigma").get<double>()});
    m.workers = j.value("workers", 1);
    if (j.contains("statuses"))
      for (const auto& s : j["statuses"]) m.statuses.push_back(status_from_string(s.get<std::string>()));
    m.wall_seconds = j.value("wall_seconds", 0.0);
    return m;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed manifest: ") + e.what());
  }
}

std::string Table::to_csv() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << csv_escape(cells[c]);
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string Table::to_json() const {
  json arr = json::array();
  for (const auto& r : rows) {
    json obj = json::object();
    for (std::size_t c = 0; c < header.size() && c < r.size(); ++c) {
      if (auto v = as_number(r[c])) {
        if (std::isnan(*v)) obj[header[c]] = nullptr;
        else if (std::isinf(*v)) obj[header[c]] = r[c];
        else obj[header[c]] = *v;
      } else {
        obj[header[c]] = r[c];
      }
    }
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

Table sweep_table(const std::vector<SweepPoint>& points) {
  return point_table(points, sweep_columns());
}

Table decomposition_table(const std::vector<SweepPoint>& points) {
  return point_table(points, {"kappa", "sigma", "status", "gamma0", "gamma1", "K_r", "K_phi",
                              "completeness_residual", "m_sine"});
}

Table spectrum_rows(const SchmidtSpectrum& s, int max_modes) {
  Table t;
  t.header = {"l", "n", "k", "lambda"};
  for (std::size_t l = 0; l < s.k.size(); ++l)
    for (std::size_t n = 0; n < s.k[l].size() && static_cast<int>(n) < max_modes; ++n)
      t.rows.push_back({std::to_string(l), std::to_string(n), format_real(s.k[l][n]),
                        format_real(s.lambda[l][n])});
  return t;
}

Table spectrum_summary(const SchmidtSpectrum& s) {
  Table t;
  t.header = {"K", "purity", "probability", "tail_mass"};
  std::vector<std::string> row = {format_real(s.participation), format_real(s.purity),
                                  format_real(s.probability), format_real(s.tail_mass)};
  for (std::size_t l = 0; l < s.f.size(); ++l) {
    t.header.push_back(f_column(static_cast<int>(l)));
    row.push_back(format_real(s.f[l]));
  }
  t.rows.push_back(std::move(row));
  return t;
}

Table profile_table(const RadialSolution& sol) {
  Table t;
  t.header = {"r", "psi"};
  for (std::size_t i = 0; i < sol.nodes.size(); ++i)
    t.rows.push_back({format_real(sol.nodes[i]), format_real(sol.profile[i])});
  return t;
}

Table radial_density_table(const PairWavefunctionGrid& grid) {
  Table t;
  t.header = {"r1", "r2", "n"};
  const auto& n = grid.radial_density();
  const auto& x = grid.radial_rule.nodes;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      t.rows.push_back({format_real(x[i]), format_real(x[j]),
                        format_real(n(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))});
  return t;
}

Table angular_density_table(const PairWavefunctionGrid& grid) {
  Table t;
  t.header = {"theta", "Gamma"};
  const auto gamma = angular_density(grid);
  for (std::size_t k = 0; k < gamma.size(); ++k)
    t.rows.push_back({format_real(grid.angular_rule.nodes[k]), format_real(gamma[k])});
  return t;
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("write failed for '" + path + "'");
}

std::vector<double> linspace_step(double first, double last, double step) {
  if (step <= 0.0) throw InvalidArgument("step > 0");
  const long count = std::lround((last - first) / step);
  std::vector<double> out;
  for (long i = 0; i <= count; ++i) {
    // Round to 12 digits so 0.2 * 3 prints as 0.6.
    const double v = first + static_cast<double>(i) * step;
    out.push_back(std::round(v * 1e12) / 1e12);
  }
  return out;
}

FigurePreset figure_preset(const std::string& name) {
  FigurePreset p;
  p.name = name;
  auto hardcore_sweep = [&](double first, double step) {
    for (double s : linspace_step(first, 3.0, step)) p.grid.push_back({Strength::hardcore(), s});
  };
  auto kappa_sweep = [&](std::initializer_list<double> sigmas) {
    for (double s : sigmas)
      for (double k : linspace_step(-6.0, 20.0, 1.0)) p.grid.push_back({Strength::finite(k), s});
  };
  if (name == "fig1a") {
    hardcore_sweep(0.25, 0.25);
    p.columns = {"sigma", "K", "status"};
  } else if (name == "fig1b") {
    hardcore_sweep(0.25, 0.25);
    p.columns = concat(concat({"sigma"}, f_columns()), {"status"});
  } else if (name == "fig1c") {
    kappa_sweep({0.5, 1.0, 2.0});
    p.columns = {"sigma", "kappa", "K", "status"};
  } else if (name == "fig1d") {
    kappa_sweep({1.0, 1.5});
    p.columns = concat(concat({"sigma", "kappa"}, f_columns()), {"status"});
  } else if (name == "fig2") {
    hardcore_sweep(0.2, 0.2);
    p.columns = {"sigma", "gamma0", "K_r", "K_phi", "status"};
  } else if (name == "fig3") {
    for (double s : {1.0, 1.5, 2.0, 2.5})
      for (double k : linspace_step(-4.0, 20.0, 1.0)) p.grid.push_back({Strength::finite(k), s});
    p.columns = {"sigma", "kappa", "gamma0", "r_peak", "status"};
  } else {
    throw InvalidArgument("unknown figure '" + name + "' (expected fig1a|fig1b|fig1c|fig1d|fig2|fig3)");
  }
  return p;
}

Table figure_table(const FigurePreset& preset, const std::vector<SweepPoint>& points) {
  return point_table(points, preset.columns);
}

std::vector<std::string> emit_figure(const std::string& name,
                                     const std::map<std::string, std::string>& overrides,
                                     int workers, const std::string& out_dir) {
  const FigurePreset preset = figure_preset(name);
  const SweepResult result = run_sweep(preset.grid, overrides, workers, name);
  const std::filesystem::path dir = std::filesystem::path(out_dir) / name;
  const std::string csv = (dir / (name + ".csv")).string();
  const std::string manifest = (dir / "manifest.json").string();
  write_file(csv, figure_table(preset, result.points).to_csv());
  write_file(manifest, manifest_to_json(result.manifest));
  return {csv, manifest};
}

}  // namespace twobody
