#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace twobody {

/// Nodes ascending in (a, b) with positive weights.
struct QuadratureRule {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Gauss-Legendre rule of order n mapped to (a, b).
QuadratureRule gauss_legendre(int n, double a, double b);

/// Uniform periodic grid theta_k = 2 pi k / n on [0, 2 pi) with trapezoid
/// weights 2 pi / n.
QuadratureRule uniform_periodic(int n);

/// sqrt(2/L) sin(s pi r / L).
double sine_orbital(int s, double L, double r);

/// Pair (m1, m2), 1 <= m1 <= m2 <= m, enumerated lexicographically.
struct PairBasisIndex {
  int m1 = 1;
  int m2 = 1;
  friend bool operator==(const PairBasisIndex&, const PairBasisIndex&) = default;
};

class PairBasis {
public:
  explicit PairBasis(int m_sine);

  int m_sine() const { return m_; }
  std::size_t size() const { return static_cast<std::size_t>(m_) * (m_ + 1) / 2; }

  std::size_t index(PairBasisIndex p) const;
  PairBasisIndex pair(std::size_t index) const;

private:
  int m_;
  std::vector<PairBasisIndex> pairs_;
};

/// Normalized symmetrized product of two sine orbitals.
double pair_permanent(PairBasisIndex idx, double L, double r1, double r2);

/// T(i, s-1) = sine_orbital(s, L, nodes[i]) for s = 1..m.
Eigen::MatrixXd sine_table(const QuadratureRule& rule, int m, double L);

}  // namespace twobody
