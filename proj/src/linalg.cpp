#include "frlstsvm/linalg.hpp"

#include <array>
#include <cmath>
#include <string>

namespace frlstsvm::linalg {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw DataError(std::string(what) + " contains non-finite entries");
}

}  // namespace

Matrix gram(const Matrix& a) {
  Matrix g = a.transpose() * a;
  g.triangularView<Eigen::StrictlyLower>() = g.transpose();
  return g;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  return a * b;
}

Matrix transpose(const Matrix& a) { return a.transpose(); }

Matrix add_scaled_identity(const Matrix& a, double delta) {
  if (a.rows() != a.cols()) throw DimensionError("add_scaled_identity: matrix is not square");
  Matrix out = a;
  out.diagonal().array() += delta;
  return out;
}

double spd_residual_tolerance(const Matrix& b) { return 1e-8 * std::max(1.0, b.norm()); }

SpdSolution spd_solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) throw DimensionError("spd_solve: matrix is not square");
  if (a.rows() != b.rows()) {
    throw DimensionError("spd_solve: right-hand side has " + std::to_string(b.rows()) +
                         " rows, system has " + std::to_string(a.rows()));
  }
  if (a.rows() == 0) throw DimensionError("spd_solve: empty system");
  require_finite(a, "spd_solve: matrix");
  require_finite(b, "spd_solve: right-hand side");

  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw DimensionError("spd_solve: matrix is not symmetric");
  }
  const Matrix sym = 0.5 * (a + a.transpose());
  const auto dim = static_cast<double>(sym.rows());
  double ridge_unit = sym.trace() / dim;
  if (!(ridge_unit > 0.0)) ridge_unit = 1.0;

  constexpr std::array<double, 5> kLadder = {0.0, 1e-12, 1e-10, 1e-8, 1e-6};
  const double tolerance = spd_residual_tolerance(b);

  SpdSolveReport report;
  for (const double step : kLadder) {
    const double ridge = step * ridge_unit;
    ++report.factorization_attempts;
    const Matrix shifted = add_scaled_identity(sym, ridge);
    const Eigen::LLT<Matrix> llt(shifted);
    if (llt.info() != Eigen::Success) continue;

    Matrix x = llt.solve(b);
    Matrix residual = shifted * x - b;
    for (int refine = 0; refine < 2 && residual.norm() > tolerance; ++refine) {
      x -= llt.solve(residual);
      residual = shifted * x - b;
    }
    report.ridge_added = ridge;
    report.residual_norm = residual.norm();
    if (x.allFinite() && report.residual_norm <= tolerance) return {std::move(x), report};
  }
  throw SingularSystemError("spd_solve: factorization failed at the largest ridge", report);
}

}  // namespace frlstsvm::linalg
