#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "twobody/special_functions.hpp"

using namespace twobody;

TEST_CASE("kummer examples") {
  CHECK(kummer_m(0.0, 1.0, 2.5).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(kummer_m(1.0, 1.0, 1.0).value == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(kummer_m(-1.0, 1.0, 0.7).value == doctest::Approx(0.3).epsilon(1e-14));
  const KummerEval e = kummer_m(1.0, 1.0, 3.0);
  CHECK(e.converged);
  CHECK(e.terms_used > 1);
}

TEST_CASE("kummer derivative examples") {
  CHECK(kummer_m_derivative(0.0, 1.0, 3.0) == 0.0);
  CHECK(kummer_m_derivative(1.0, 1.0, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(kummer_m_derivative(-1.0, 1.0, 0.4) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("closed forms") {
  // M(1, 2, z) = (e^z - 1) / z
  for (double z : {0.3, 2.0, 7.5})
    CHECK(kummer_m(1.0, 2.0, z).value == doctest::Approx(std::expm1(z) / z).epsilon(1e-13));
  // M(-2, 1, z) = L_2(z) = 1 - 2z + z^2/2
  for (double z : {0.5, 3.0})
    CHECK(kummer_m(-2.0, 1.0, z).value == doctest::Approx(1 - 2 * z + z * z / 2).epsilon(1e-13));
}

TEST_CASE("kummer transformation") {
  for (double a : {-0.7, 0.25, 1.3, 2.5})
    for (double z : {0.1, 1.0, 3.0, 5.0}) {
      const double lhs = kummer_m(a, 1.0, z).value;
      const double rhs = std::exp(z) * kummer_m(1.0 - a, 1.0, -z).value;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("independent library oracle") {
  for (double a : {-1.6, -0.3, 0.45, 1.25, 3.0})
    for (double z : {0.32, 4.0, 18.0, 40.0}) {
      const double ref = boost::math::hypergeometric_1F1(a, 1.0, z);
      CHECK(kummer_m(a, 1.0, z).value == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("finite-difference derivative") {
  const double h = 1e-5;
  for (double a : {-0.8, 0.6, 1.9})
    for (double z : {0.5, 2.0, 6.0}) {
      const double fd = (kummer_m(a, 1.0, z + h).value - kummer_m(a, 1.0, z - h).value) / (2 * h);
      CHECK(kummer_m_derivative(a, 1.0, z) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("domain and convergence") {
  CHECK_THROWS_AS(kummer_m(1.0, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(kummer_m(1.0, -2.0, 1.0), InvalidArgument);
  CHECK_NOTHROW(kummer_m(1.0, -2.5, 1.0));
  const KummerEval e = kummer_m(0.5, 1.0, 50.0);
  CHECK(e.converged);
}
