#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "twobody/kernels.hpp"
#include "twobody/wavefield.hpp"

using namespace twobody;

namespace {

struct Setup {
  NumericsConfig cfg;
  RadialSolution sol;
  PairWavefunctionGrid grid;
  Setup(Strength kappa, double sigma) {
    cfg = NumericsConfig::defaults(sigma);
    cfg.n_radial = 48;
    cfg.n_angular = 64;
    cfg.l_max = 16;
    sol = solve_ground_state({kappa, sigma}, cfg);
    grid = assemble({kappa, sigma}, cfg, sol);
  }
};

}  // namespace

TEST_CASE("serial and OpenMP kernels agree") {
  for (auto [kappa, sigma] : std::vector<std::pair<Strength, double>>{
           {Strength::hardcore(), 1.0}, {Strength::finite(-2.0), 0.5}, {Strength::finite(0.0), 1.0}}) {
    CAPTURE(kappa.to_string());
    const Setup s(kappa, sigma);
    const auto& psi = s.grid.evaluator();
    const auto& radial = s.grid.radial_rule;

    const auto fs = kernels::serial::fill_grid(psi, radial, s.cfg.n_angular);
    const auto fo = kernels::omp::fill_grid(psi, radial, s.cfg.n_angular);
    CHECK(fs.clamped == fo.clamped);
    REQUIRE(fs.grid.data.size() == fo.grid.data.size());
    double fill_diff = 0.0;
    for (std::size_t i = 0; i < fs.grid.data.size(); ++i)
      fill_diff = std::max(fill_diff, std::abs(fs.grid.data[i] - fo.grid.data[i]));
    CHECK(fill_diff <= 1e-15);

    const auto ps = kernels::serial::project_channels(psi, radial, s.grid.cusp(), s.cfg.l_max);
    const auto po = kernels::omp::project_channels(psi, radial, s.grid.cusp(), s.cfg.l_max);
    for (int l = 0; l <= s.cfg.l_max; ++l)
      CHECK((ps.g[l] - po.g[l]).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((ps.pair_density - po.pair_density).cwiseAbs().maxCoeff() <= 1e-13);

    const auto as = kernels::serial::angular_profile(fs.grid, radial, s.cfg.n_angular);
    const auto ao = kernels::omp::angular_profile(fo.grid, radial, s.cfg.n_angular);
    for (std::size_t k = 0; k < as.size(); ++k) CHECK(as[k] == doctest::Approx(ao[k]).epsilon(1e-13));
  }
}

TEST_CASE("cusp geometry") {
  const kernels::CuspGeometry hc(1.0, true, true, 64);
  CHECK(hc.cusp_angle(1.0, 1.0) == doctest::Approx(std::acos(0.5)));
  CHECK(hc.cusp_angle(3.0, 1.0) < 0.0);  // |r1 - r2| > sigma: never inside the core
  CHECK(hc.pieces(0.3, 0.4).theta.empty());
  const auto p = hc.pieces(1.0, 1.0);
  CHECK(p.theta.size() == 64);  // core piece dropped
  for (double t : p.theta) CHECK(t > std::acos(0.5));

  const kernels::CuspGeometry soft(1.0, true, false, 64);
  CHECK(soft.pieces(1.0, 1.0).theta.size() == 128);
  double total = 0.0;
  for (double w : soft.pieces(1.0, 1.0).weight) total += w;
  CHECK(total == doctest::Approx(2 * std::numbers::pi));
}

TEST_CASE("packed index bijection") {
  const std::size_t n = 9;
  std::vector<int> seen(n * (n + 1) / 2, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const auto idx = kernels::PackedGrid::pair_index(i, j, n);
      REQUIRE(idx < seen.size());
      ++seen[idx];
      CHECK(kernels::PackedGrid::pair_index(j, i, n) == idx);
    }
  for (int c : seen) CHECK(c == 1);
}
