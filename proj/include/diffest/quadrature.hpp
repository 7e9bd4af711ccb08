#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "diffest/errors.hpp"

namespace diffest {

/// Gauss-Legendre nodes and weights on [-1, 1], computed once per order by
/// Newton iteration on the Legendre polynomial.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int order) : nodes(order), weights(order) {
    const int n = order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      // Chebyshev-like initial guess, then Newton.
      double x = std::cos(kPiLocal * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        const double dx = p0 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
  }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * f(mid + half * nodes[i]);
    }
    return sum * half;
  }

 private:
  static constexpr double kPiLocal = 3.14159265358979323846;
};

/// Adaptive panel integration: a panel is accepted when splitting it changes
/// the Gauss-Legendre estimate by less than the shared tolerance.
class AdaptiveIntegrator {
 public:
  explicit AdaptiveIntegrator(int order = 16) : rule_(order) {}

  double integrate(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, int max_depth = 40) const {
    return refine(f, a, b, rule_.integrate(f, a, b), abs_tol, max_depth);
  }

 private:
  double refine(const std::function<double(double)>& f, double a, double b, double whole,
                double tol, int depth) const {
    if (depth <= 0) {
      throw NumericalError("adaptive quadrature failed to converge");
    }
    const double mid = 0.5 * (a + b);
    const double left = rule_.integrate(f, a, mid);
    const double right = rule_.integrate(f, mid, b);
    if (std::abs(left + right - whole) <= tol) return left + right;
    return refine(f, a, mid, left, 0.5 * tol, depth - 1) +
           refine(f, mid, b, right, 0.5 * tol, depth - 1);
  }

  GaussLegendre rule_;
};

}  // namespace diffest
