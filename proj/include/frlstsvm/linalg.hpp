#pragma once

#include <Eigen/Dense>

#include "frlstsvm/error.hpp"

namespace frlstsvm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace linalg {

struct SpdSolveReport {
  double ridge_added = 0.0;
  double residual_norm = 0.0;
  int factorization_attempts = 0;
};

struct SpdSolution {
  Matrix x;
  SpdSolveReport report;
};

/// Raised when no ridge in the escalation ladder yields an acceptable solve.
class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, SpdSolveReport report)
      : Error(what), report_(report) {}
  const SpdSolveReport& report() const noexcept { return report_; }

 private:
  SpdSolveReport report_;
};

/// A^T A with the lower triangle mirrored from the upper one, so the result
/// is exactly symmetric.
Matrix gram(const Matrix& a);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix add_scaled_identity(const Matrix& a, double delta);

/// Solves (A + rI) X = B for symmetric positive (semi)definite A.
///
/// The ridge r starts at 0 and, whenever the Cholesky factorization fails or
/// the residual ||(A + rI)X - B||_F exceeds 1e-8 * max(1, ||B||_F), escalates
/// through {1e-12, 1e-10, 1e-8, 1e-6} * trace(A)/dim. Each factorization is
/// followed by up to two steps of iterative refinement. A must be symmetric
/// to 1e-10 relative; it is symmetrized before factoring.
SpdSolution spd_solve(const Matrix& a, const Matrix& b);

/// Residual threshold applied by spd_solve.
double spd_residual_tolerance(const Matrix& b);

}  // namespace linalg
}  // namespace frlstsvm
