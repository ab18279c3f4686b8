#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "frlstsvm/dataset.hpp"
#include "frlstsvm/fuzzy_rough.hpp"
#include "frlstsvm/linalg.hpp"

namespace frlstsvm {

enum class KernelType { linear, gaussian };

struct KernelSpec {
  KernelType type = KernelType::linear;
  double sigma = 1.0;

  bool operator==(const KernelSpec&) const = default;
};

/// Which algebraically equivalent closed form computes the planes.
///  - dual:   u1 = -(H'H + dI)^-1 G' a,  a = (D2^-1/c1 + G (H'H + dI)^-1 G')^-1 e2
///  - primal: u1 = -(H'H + dI + c1 G'D2 G)^-1 c1 G'D2 e2
/// Both minimize the same weighted quadratic; the primal form only factors
/// (n+1)x(n+1) systems and is preferred when the majority class is large.
enum class SolverForm { dual, primal };

std::string_view to_string(KernelType k);
std::string_view to_string(SolverForm f);
KernelType parse_kernel_type(std::string_view s);
SolverForm parse_solver_form(std::string_view s);

struct TrainConfig {
  double c1 = 1.0;
  double c2 = 1.0;
  double delta = 1e-6;
  double tau = 0.0;
  FuzzyParams fuzzy;
  KernelSpec kernel;
  bool subsample_enabled = true;
  bool weights_enabled = true;
  SolverForm solver = SolverForm::dual;

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

struct Hyperplane {
  Vector w;
  double b = 0.0;

  bool degenerate() const noexcept { return w.size() == 0 || w.squaredNorm() == 0.0; }
};

struct TrainingSummary {
  std::size_t minority_count = 0;
  std::size_t majority_count = 0;
  std::size_t majority_kept = 0;
  std::vector<linalg::SpdSolveReport> solves;
};

struct LinearModel {
  Hyperplane plane1;  ///< proximal to the minority class
  Hyperplane plane2;  ///< proximal to the majority class
  /// Absent for models fitted directly on already-prepared matrices.
  std::optional<ScalingParams> scaling;
  TrainConfig config;
  TrainingSummary summary;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(plane1.w.size()); }
};

struct KernelModel {
  /// Minority rows stacked over the retained majority rows.
  Matrix reference;
  Vector w1;
  double b1 = 0.0;
  Vector w2;
  double b2 = 0.0;
  KernelSpec kernel;
  std::optional<ScalingParams> scaling;
  /// K(reference, reference).
  Matrix gram;
  TrainConfig config;
  TrainingSummary summary;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(reference.cols()); }
};

using Model = std::variant<LinearModel, KernelModel>;

struct Prediction {
  int label = kMinority;
  double dist1 = 0.0;
  double dist2 = 0.0;
};

double gaussian_kernel(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                       const Eigen::Ref<const Eigen::RowVectorXd>& y, double sigma);
/// K(a_i, b_j) for every pair of rows.
Matrix gaussian_kernel_matrix(const Matrix& a, const Matrix& b, double sigma);

/// Weighted twin planes from the minority rows `x1` and the retained
/// majority rows `x2hat`. `d1` weights minority rows, `d2` majority rows.
LinearModel fit_linear(const Matrix& x1, const Matrix& x2hat, const WeightVector& d1,
                       const WeightVector& d2, double c1, double c2, double delta,
                       SolverForm form = SolverForm::dual);

/// Unweighted least-squares twin SVM:
///   u1 = -(G'G + (H'H + dI)/c1)^-1 G'e2,  u2 = (H'H + (G'G + dI)/c2)^-1 H'e1.
LinearModel fit_lstsvm_baseline(const Matrix& x1, const Matrix& x2, double c1, double c2, double delta);

KernelModel fit_kernel(const Matrix& x1, const Matrix& x2hat, const WeightVector& d1,
                       const WeightVector& d2, const TrainConfig& config);

/// Nearest plane by |w'x + b| / ||w||. Ties go to the minority class.
Prediction predict_linear(const LinearModel& model, const Vector& x_raw);
/// Nearest kernel surface by |k_x'w + b| / sqrt(w'Kw).
Prediction predict_kernel(const KernelModel& model, const Vector& x_raw);

Prediction predict(const Model& model, const Vector& x_raw);
std::vector<Prediction> predict(const Model& model, const Matrix& x_raw);
std::size_t model_dimension(const Model& model);

/// Full pipeline: scale on `ds`, split, score and threshold the majority,
/// weight both classes, and fit the configured surfaces.
Model fit_frlstsvm(const LabeledDataset& ds, const TrainConfig& config);

namespace detail {

/// Result of the fuzzy-rough preparation stage of the pipeline.
struct PreparedTraining {
  ScalingParams scaling;
  Matrix minority;
  Matrix majority_kept;
  WeightVector minority_weights;
  WeightVector majority_weights;
  std::size_t majority_count = 0;
};

PreparedTraining prepare_training(const LabeledDataset& ds, const TrainConfig& config);

/// Normal-equation solver for the weighted linear problem. The Gram parts
/// are formed once; each solve only factors (n+1)x(n+1) systems.
class WeightedNormalEquations {
 public:
  WeightedNormalEquations(const Matrix& x1, const Matrix& x2hat, const Vector& v1, const Vector& v2);
  /// Returns (u1, u2) stacked as the columns of an (n+1)x2 matrix.
  std::pair<Vector, Vector> solve(double c1, double c2, double delta,
                                  std::vector<linalg::SpdSolveReport>* reports = nullptr) const;

 private:
  Matrix hth_;      // H'H
  Matrix gtg_;      // G'G
  Matrix gtd2g_;    // G'D2 G
  Matrix htd1h_;    // H'D1 H
  Vector gtd2e_;    // G'D2 e2
  Vector htd1e_;    // H'D1 e1
};

LinearModel planes_from_solution(const Vector& u1, const Vector& u2);

}  // namespace detail

}  // namespace frlstsvm
