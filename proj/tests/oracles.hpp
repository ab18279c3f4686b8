#pragma once

// Reference computations written independently of the library code paths.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline Matrix with_ones(const Matrix& x) {
  Matrix out(x.rows(), x.cols() + 1);
  out << x, Vector::Ones(x.rows());
  return out;
}

/// Weighted twin objectives over u = [w; b].
///   plane 1: 1/2 |Hu|^2 + d/2 |u|^2 + c1/2 (Gu + e)' D2 (Gu + e)
///   plane 2: 1/2 |Gu|^2 + d/2 |u|^2 + c2/2 (Hu - e)' D1 (Hu - e)
struct TwinObjective {
  Matrix h, g;
  Vector v1, v2;
  double c1, c2, delta;

  TwinObjective(const Matrix& x1, const Matrix& x2, Vector w1, Vector w2, double c1_, double c2_, double d)
      : h(with_ones(x1)), g(with_ones(x2)), v1(std::move(w1)), v2(std::move(w2)), c1(c1_), c2(c2_), delta(d) {}

  double value1(const Vector& u) const {
    const Vector r = g * u + Vector::Ones(g.rows());
    return 0.5 * (h * u).squaredNorm() + 0.5 * delta * u.squaredNorm() + 0.5 * c1 * r.dot(v2.cwiseProduct(r));
  }
  Vector grad1(const Vector& u) const {
    const Vector r = g * u + Vector::Ones(g.rows());
    return h.transpose() * (h * u) + delta * u + c1 * g.transpose() * v2.cwiseProduct(r);
  }
  double value2(const Vector& u) const {
    const Vector r = h * u - Vector::Ones(h.rows());
    return 0.5 * (g * u).squaredNorm() + 0.5 * delta * u.squaredNorm() + 0.5 * c2 * r.dot(v1.cwiseProduct(r));
  }
  Vector grad2(const Vector& u) const {
    const Vector r = h * u - Vector::Ones(h.rows());
    return g.transpose() * (g * u) + delta * u + c2 * h.transpose() * v1.cwiseProduct(r);
  }
};

/// Conjugate-gradient descent on a convex quadratic given only its gradient.
/// Restarts every `dim` steps; stops at |grad| <= tol.
template <class Grad>
Vector descend(Grad grad, Eigen::Index dim, double tol = 1e-13, int max_iter = 200000) {
  Vector u = Vector::Zero(dim);
  Vector r = -grad(u);
  const Vector g0 = grad(Vector::Zero(dim));
  for (int it = 0; it < max_iter && r.norm() > tol * (1.0 + g0.norm()); ++it) {
    Vector p = r;
    for (Eigen::Index k = 0; k < dim && r.norm() > tol * (1.0 + g0.norm()); ++k) {
      // Hessian-vector product from two gradients (exact for quadratics).
      const Vector hp = grad(p) - grad(Vector::Zero(dim));
      const double curvature = p.dot(hp);
      if (!(curvature > 0.0)) break;
      const double step = r.dot(r) / curvature;
      u += step * p;
      const Vector r_next = -grad(u);
      const double beta = r_next.dot(r_next) / r.dot(r);
      r = r_next;
      p = r + beta * p;
    }
  }
  return u;
}

/// Brute-force fuzzy similarity of two scaled rows.
inline double similarity(const std::vector<double>& a, const std::vector<double>& b, double gamma,
                         const std::string& tnorm) {
  double acc = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double s = std::max(0.0, 1.0 - gamma * std::fabs(a[k] - b[k]));
    if (tnorm == "minimum") {
      acc = std::min(acc, s);
    } else if (tnorm == "product") {
      acc = acc * s;
    } else {
      acc = std::max(0.0, acc + s - 1.0);
    }
  }
  return acc;
}

/// Exact ratio num/den as the nearest double (0 for 0/0).
inline double ratio(std::size_t num, std::size_t den) {
  if (den == 0) return 0.0;
  const std::size_t g = std::gcd(num, den);
  return static_cast<double>(static_cast<long double>(num / g) / static_cast<long double>(den / g));
}

}  // namespace oracle
