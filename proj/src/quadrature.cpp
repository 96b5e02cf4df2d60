#include "twobody/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "twobody/model.hpp"

namespace twobody {

namespace {

// (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InvalidArgument("gauss_legendre: n must be >= 1");
  if (!(a < b)) throw InvalidArgument("gauss_legendre: need a < b");

  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);

  // Roots are symmetric about 0; Newton on the non-negative half.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    if (n % 2 == 1 && i == n / 2) x = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      auto [p, dp] = legendre(n, x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    double dp = legendre(n, x).second;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

QuadratureRule uniform_periodic(int n) {
  if (n < 1) throw InvalidArgument("uniform_periodic: n must be >= 1");
  QuadratureRule rule;
  rule.a = 0.0;
  rule.b = 2.0 * std::numbers::pi;
  rule.nodes.resize(n);
  rule.weights.assign(n, 2.0 * std::numbers::pi / n);
  for (int k = 0; k < n; ++k) rule.nodes[k] = 2.0 * std::numbers::pi * k / n;
  return rule;
}

double sine_orbital(int s, double L, double r) {
  return std::sqrt(2.0 / L) * std::sin(s * std::numbers::pi * r / L);
}

PairBasis::PairBasis(int m_sine) : m_(m_sine) {
  if (m_sine < 1) throw InvalidArgument("PairBasis: m_sine must be >= 1");
  pairs_.reserve(size());
  for (int m1 = 1; m1 <= m_; ++m1)
    for (int m2 = m1; m2 <= m_; ++m2) pairs_.push_back({m1, m2});
}

std::size_t PairBasis::index(PairBasisIndex p) const {
  if (p.m1 < 1 || p.m1 > p.m2 || p.m2 > m_) throw InvalidArgument("PairBasis: index out of range");
  // Rows m1' < m1 contribute (m - m1' + 1) entries each.
  const std::size_t before = static_cast<std::size_t>(p.m1 - 1) * (2 * m_ - p.m1 + 2) / 2;
  return before + static_cast<std::size_t>(p.m2 - p.m1);
}

PairBasisIndex PairBasis::pair(std::size_t index) const {
  if (index >= pairs_.size()) throw InvalidArgument("PairBasis: index out of range");
  return pairs_[index];
}

double pair_permanent(PairBasisIndex idx, double L, double r1, double r2) {
  if (idx.m1 == idx.m2) return sine_orbital(idx.m1, L, r1) * sine_orbital(idx.m1, L, r2);
  return (sine_orbital(idx.m1, L, r1) * sine_orbital(idx.m2, L, r2) +
          sine_orbital(idx.m1, L, r2) * sine_orbital(idx.m2, L, r1)) /
         std::numbers::sqrt2;
}

Eigen::MatrixXd sine_table(const QuadratureRule& rule, int m, double L) {
  Eigen::MatrixXd t(rule.size(), m);
  for (std::size_t i = 0; i < rule.size(); ++i)
    for (int s = 1; s <= m; ++s) t(i, s - 1) = sine_orbital(s, L, rule.nodes[i]);
  return t;
}

}  // namespace twobody
