// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "twobody/sweep.hpp"

using namespace twobody;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Strength hc() { return Strength::hardcore(); }
Strength k(double v) { return Strength::finite(v); }

std::vector<SweepPoint> sweep(const std::vector<SystemParams>& grid) {
  return run_sweep(grid, {}, 1, "acceptance").points;
}

std::vector<SweepPoint> hardcore_sweep(double first, double step) {
  std::vector<SystemParams> g;
  for (double s : linspace_step(first, 3.0, step)) g.push_back({hc(), s});
  return sweep(g);
}

bool all_ran(const std::vector<SweepPoint>& pts, Outcome& o) {
  bool ok = true;
  for (const auto& p : pts)
    if (p.status == PointStatus::solver_failed) {
      ok = false;
      o.detail << " [" << p.params.kappa.to_string() << "," << format_real(p.params.sigma)
               << " failed in " << p.failed_stage << ": " << p.message << "]";
    }
  o.require(ok, "every point solved");
  return ok;
}

template <class F>
bool strictly(const std::vector<SweepPoint>& pts, F value, bool increasing) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double a = value(pts[i - 1]), b = value(pts[i]);
    if (increasing ? !(b > a) : !(b < a)) return false;
  }
  return true;
}

std::string fmt(double x) { return format_real(x); }

// --------------------------------------------------------------------------

void criterion1(Outcome& o) {
  double worst_e = 0, worst_1 = 0, worst_r = 0;
  const auto pts = sweep({{k(0), 0.5}, {k(0), 1.0}, {k(0), 2.0}});
  all_ran(pts, o);
  for (const auto& p : pts) {
    worst_e = std::max(worst_e, std::abs(p.obs.E_rel - 1));
    for (double v : {p.obs.K, p.obs.f[0], p.obs.gamma0}) worst_1 = std::max(worst_1, std::abs(v - 1));
    for (double v : {p.obs.K_r, p.obs.K_phi}) worst_r = std::max(worst_r, std::abs(v - 1));
  }
  o.detail << "max|E-1|=" << fmt(worst_e) << " max|{K,f0,gamma0}-1|=" << fmt(worst_1)
           << " max|{K_r,K_phi}-1|=" << fmt(worst_r);
  o.require(worst_e <= 1e-8, "E_rel");
  o.require(worst_1 <= 1e-6, "K, f0, gamma0");
  o.require(worst_r <= 1e-4, "K_r, K_phi");
}

void criterion2(Outcome& o) {
  const std::vector<SystemParams> pts = {{k(2), 0.5}, {k(-2), 1.0}, {k(4), 1.0}, {hc(), 1.0}, {hc(), 2.0}};
  double worst = 0;
  for (const auto& p : pts) {
    const double e = solve_ground_state(p, resolve_numerics({}, p.sigma)).energy;
    const double fd = oracle_fd_energy(p, 20000);
    const double rel = std::abs(e - fd) / std::abs(fd);
    worst = std::max(worst, rel);
    o.detail << "(" << p.kappa.to_string() << "," << fmt(p.sigma) << "): " << fmt(e) << " vs "
             << fmt(fd) << "; ";
  }
  o.detail << "max rel=" << fmt(worst);
  o.require(worst <= 1e-4, "relative agreement 1e-4");
}

std::vector<SweepPoint> fig1_sweep() {
  static const auto pts = hardcore_sweep(0.25, 0.25);
  return pts;
}

void criterion3(Outcome& o) {
  const auto pts = fig1_sweep();
  if (!all_ran(pts, o)) return;
  const double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : pts) {
    const double x = p.params.sigma, y = p.obs.K;
    sx += x, sy += y, sxx += x * x, sxy += x * y, syy += y * y;
  }
  const double cov = sxy - sx * sy / n, vx = sxx - sx * sx / n, vy = syy - sy * sy / n;
  const double r2 = cov * cov / (vx * vy);
  o.detail << "K(0.25)=" << fmt(pts.front().obs.K) << " K(3)=" << fmt(pts.back().obs.K)
           << " R^2=" << fmt(r2);
  o.require(strictly(pts, [](const SweepPoint& p) { return p.obs.K; }, true), "K strictly increasing");
  o.require(r2 >= 0.98, "R^2 >= 0.98");
}

void criterion4(Outcome& o) {
  const auto pts = fig1_sweep();
  if (!all_ran(pts, o)) return;
  double crossing = std::nan("");
  for (std::size_t i = 1; i < pts.size() && std::isnan(crossing); ++i) {
    const double d0 = pts[i - 1].obs.f[0] - pts[i - 1].obs.f[1];
    const double d1 = pts[i].obs.f[0] - pts[i].obs.f[1];
    if (d0 > 0 && d1 <= 0) {
      const double s0 = pts[i - 1].params.sigma, s1 = pts[i].params.sigma;
      crossing = s0 + d0 / (d0 - d1) * (s1 - s0);
    }
  }
  o.detail << "sigma*=" << fmt(crossing) << " f0(0.25)=" << fmt(pts.front().obs.f[0])
           << " f0(3)=" << fmt(pts.back().obs.f[0]);
  o.require(crossing >= 1.6 && crossing <= 2.4, "crossing in [1.6, 2.4]");
  o.require(strictly(pts, [](const SweepPoint& p) { return p.obs.f[0]; }, false),
            "f0 strictly decreasing");
}

std::vector<SweepPoint> fig2_sweep() {
  static const auto pts = hardcore_sweep(0.2, 0.2);
  return pts;
}

void criterion5(Outcome& o) {
  const auto pts = fig2_sweep();
  if (!all_ran(pts, o)) return;
  std::size_t arg = 0;
  double lowest = 1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    lowest = std::min(lowest, pts[i].obs.gamma0);
    if (pts[i].obs.gamma0 < pts[arg].obs.gamma0) arg = i;
  }
  const double s = pts[arg].params.sigma;
  o.detail << "min gamma0=" << fmt(lowest) << " at sigma=" << fmt(s);
  o.require(lowest >= 0.9, "gamma0 >= 0.9");
  o.require(arg > 0 && arg + 1 < pts.size(), "interior minimum");
  o.require(s >= 0.6 && s <= 1.0, "argmin in [0.6, 1.0]");
}

void criterion6(Outcome& o) {
  const auto pts = fig2_sweep();
  if (!all_ran(pts, o)) return;
  bool ordered = true;
  double gap1 = std::nan(""), gap3 = std::nan("");
  for (const auto& p : pts) {
    const double gap = p.obs.K_phi - p.obs.K_r;
    if (p.params.sigma >= 0.5 && gap < 0) ordered = false;
    if (p.params.sigma == 1.0) gap1 = gap;
    if (p.params.sigma == 3.0) gap3 = gap;
  }
  o.detail << "K_phi-K_r at sigma=1: " << fmt(gap1) << ", at sigma=3: " << fmt(gap3);
  o.require(ordered, "K_r <= K_phi for sigma >= 0.5");
  o.require(gap3 > gap1, "gap grows from sigma=1 to sigma=3");
}

void criterion7(Outcome& o) {
  std::vector<SystemParams> g;
  for (double kappa : linspace_step(-6.0, -1.0, 0.5)) g.push_back({k(kappa), 2.0});
  const auto pts = sweep(g);
  if (!all_ran(pts, o)) return;
  double best = 1e300, at = 0;
  for (const auto& p : pts)
    if (p.obs.K < best) best = p.obs.K, at = p.params.kappa.value();
  o.detail << "min K=" << fmt(best) << " at kappa=" << fmt(at);
  o.require(best <= 1.05, "min K <= 1.05");
}

void criterion8(Outcome& o) {
  std::vector<SystemParams> g;
  for (double kappa : linspace_step(0.0, 20.0, 1.0)) g.push_back({k(kappa), 2.0});
  const auto pts = sweep(g);
  if (!all_ran(pts, o)) return;
  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i)
    if (pts[i].obs.gamma0 < pts[i - 1].obs.gamma0 && pts[i].obs.gamma0 < pts[i + 1].obs.gamma0)
      minima.push_back(i);
  o.require(!minima.empty(), "interior local minimum at sigma=2");
  bool peak_ok = false;
  for (std::size_t i : minima) {
    const double dev = std::abs(pts[i].obs.r_peak - 2.0);
    o.detail << "local min kappa*=" << fmt(pts[i].params.kappa.value())
             << " gamma0=" << fmt(pts[i].obs.gamma0) << " r_peak=" << fmt(pts[i].obs.r_peak) << "; ";
    peak_ok = peak_ok || dev <= 0.3;
  }
  o.require(peak_ok, "|r_peak - sigma| <= 0.3 at kappa*");

  std::vector<SystemParams> a;
  for (double kappa : {0.0, -1.0, -2.0, -3.0, -4.0}) a.push_back({k(kappa), 1.0});
  const auto att = sweep(a);
  if (!all_ran(att, o)) return;
  o.detail << "sigma=1 gamma0(0..-4):";
  for (const auto& p : att) o.detail << ' ' << fmt(p.obs.gamma0);
  o.require(strictly(att, [](const SweepPoint& p) { return p.obs.gamma0; }, false),
            "gamma0 strictly decreasing for sigma=1, kappa 0..-4");
}

void criterion9(Outcome& o) {
  const SystemParams p{hc(), 2.5};
  const auto cfg = resolve_numerics({}, p.sigma);
  const auto a = analyze_point(p, cfg);
  const auto gamma = angular_density(a.grid);
  const std::size_t n = gamma.size();
  const std::size_t arg = std::max_element(gamma.begin(), gamma.end()) - gamma.begin();
  const double theta = 2 * std::numbers::pi * static_cast<double>(arg) / static_cast<double>(n);
  const double step = 2 * std::numbers::pi / static_cast<double>(n);
  o.detail << "argmax theta=" << fmt(theta) << " step=" << fmt(step);
  o.require(std::abs(theta - std::numbers::pi) <= step + 1e-12, "maximum at pi");
}

void criterion10(Outcome& o) {
  double worst_prob = 0, worst_f = 0, worst_g = 0, worst_pur = 0, worst_pe = 0, worst_dbl = 0;
  for (const auto& kappa : {k(-2), k(0), k(4), hc()})
    for (double sigma : {0.5, 2.0}) {
      const SystemParams p{kappa, sigma};
      const auto cfg = resolve_numerics({}, sigma);
      double K = 0, g0 = 0;
      {
        const auto a = analyze_point(p, cfg);
        const auto& s = a.spectrum;
        double fsum = 0;
        for (double f : s.f) fsum += f;
        double gsum = 0;
        for (double g : a.decomposition.gamma) gsum += g;
        worst_prob = std::max(worst_prob, std::abs(s.probability - 1));
        worst_f = std::max(worst_f, std::abs(fsum - 1));
        worst_g = std::max(worst_g, std::abs(gsum - 1));
        worst_pur = std::max(worst_pur, std::abs(s.purity - a.purity_integral) / s.purity);
        worst_pe = std::max(worst_pe, std::abs(a.product.spectral - a.product.quadrature));
        K = s.participation;
        g0 = a.decomposition.gamma.at(0);
      }
      auto fine = cfg;
      fine.n_radial *= 2;
      fine.n_angular *= 2;
      const auto b = analyze_point(p, fine);
      const double dK = std::abs(b.spectrum.participation - K) / K;
      const double dg = std::abs(b.decomposition.gamma.at(0) - g0) / g0;
      worst_dbl = std::max({worst_dbl, dK, dg});
      o.detail << "(" << kappa.to_string() << "," << fmt(sigma) << ") dK=" << fmt(dK)
               << " dgamma0=" << fmt(dg) << "; ";
    }
  o.detail << "max: prob=" << fmt(worst_prob) << " f=" << fmt(worst_f) << " gamma=" << fmt(worst_g)
           << " purity=" << fmt(worst_pur) << " product_error=" << fmt(worst_pe)
           << " doubling=" << fmt(worst_dbl);
  o.require(worst_prob <= 1e-6, "probability sum");
  o.require(worst_f <= 1e-6, "sum f_l");
  o.require(worst_g <= 1e-6, "sum gamma_n");
  o.require(worst_pur <= 1e-6, "purity routes");
  o.require(worst_pe <= 1e-5, "product_error routes");
  o.require(worst_dbl <= 5e-3, "grid doubling 0.5%");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"non-interacting exactness", criterion1},
      {"oracle equivalence", criterion2},
      {"participation ratio grows linearly with sigma (hardcore)", criterion3},
      {"f0/f1 parity near sigma=2, f0 decreasing (hardcore)", criterion4},
      {"gamma0 near one with minimum near sigma=0.8 (hardcore)", criterion5},
      {"K_r <= K_phi with growing gap (hardcore)", criterion6},
      {"attractive washout at sigma=2", criterion7},
      {"gamma0 local minimum with r_peak near sigma; attractive decrease", criterion8},
      {"crystallization peak at pi (hardcore sigma=2.5)", criterion9},
      {"sum rules, route agreement and grid doubling", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu: %s (%.0f s) :: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
