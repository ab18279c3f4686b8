#include "frlstsvm/classifier.hpp"

#include <cmath>
#include <limits>

namespace frlstsvm {

using linalg::spd_solve;
using linalg::SpdSolveReport;

std::string_view to_string(KernelType k) { return k == KernelType::linear ? "linear" : "gaussian"; }
std::string_view to_string(SolverForm f) { return f == SolverForm::dual ? "dual" : "primal"; }

KernelType parse_kernel_type(std::string_view s) {
  if (s == "linear") return KernelType::linear;
  if (s == "gaussian" || s == "rbf") return KernelType::gaussian;
  throw ConfigError("unknown kernel '" + std::string(s) + "' (linear|gaussian)");
}

SolverForm parse_solver_form(std::string_view s) {
  if (s == "dual") return SolverForm::dual;
  if (s == "primal") return SolverForm::primal;
  throw ConfigError("unknown solver form '" + std::string(s) + "' (dual|primal)");
}

void TrainConfig::validate() const {
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(c1)) throw ConfigError("c1 must be a finite value > 0");
  if (!positive(c2)) throw ConfigError("c2 must be a finite value > 0");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be a finite value >= 0");
  if (!(tau >= 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in [0, 1]");
  if (kernel.type == KernelType::gaussian && !positive(kernel.sigma)) {
    throw ConfigError("sigma must be a finite value > 0 for the gaussian kernel");
  }
  fuzzy.validate();
}

// ---------------------------------------------------------------------------
// Kernels

double gaussian_kernel(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                       const Eigen::Ref<const Eigen::RowVectorXd>& y, double sigma) {
  if (x.size() != y.size()) throw DimensionError("gaussian_kernel: dimension mismatch");
  return std::exp(-(x - y).squaredNorm() / (2.0 * sigma * sigma));
}

Matrix gaussian_kernel_matrix(const Matrix& a, const Matrix& b, double sigma) {
  if (a.cols() != b.cols()) throw DimensionError("gaussian_kernel_matrix: dimension mismatch");
  const Matrix at = a.transpose();
  const Matrix bt = b.transpose();
  const double scale = 1.0 / (2.0 * sigma * sigma);
  Matrix k(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      k(i, j) = std::exp(-(at.col(i) - bt.col(j)).squaredNorm() * scale);
    }
  }
  return k;
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

Matrix augment(const Matrix& x) {
  Matrix out(x.rows(), x.cols() + 1);
  out.leftCols(x.cols()) = x;
  out.col(x.cols()).setOnes();
  return out;
}

void check_weights(const WeightVector& w, Eigen::Index rows, const char* which) {
  if (static_cast<Eigen::Index>(w.weights.size()) != rows) {
    throw DimensionError(std::string(which) + " weights: expected " + std::to_string(rows) +
                         " entries, got " + std::to_string(w.weights.size()));
  }
  for (const double v : w.weights) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DataError(std::string(which) + " weights must be > 0");
  }
}

/// Twin solutions (u1, u2) for the weighted problem given augmented
/// matrices H (minority) and G (majority).
std::pair<Vector, Vector> solve_dual(const Matrix& h, const Matrix& g, const Vector& v1, const Vector& v2,
                                     double c1, double c2, double delta,
                                     std::vector<SpdSolveReport>& reports) {
  const auto record = [&](linalg::SpdSolution s) {
    reports.push_back(s.report);
    return std::move(s.x);
  };
  // u1 = -(H'H + dI)^-1 G' alpha,  alpha = (D2^-1/c1 + G (H'H + dI)^-1 G')^-1 e2
  const Matrix m_gt = record(spd_solve(linalg::add_scaled_identity(linalg::gram(h), delta), g.transpose()));
  Matrix inner1 = g * m_gt;
  inner1 = 0.5 * (inner1 + inner1.transpose());
  inner1.diagonal().array() += v2.array().inverse() / c1;
  const Vector alpha = record(spd_solve(inner1, Vector::Ones(g.rows())));
  Vector u1 = -(m_gt * alpha);

  // u2 = (G'G + dI)^-1 H' beta,  beta = (D1^-1/c2 + H (G'G + dI)^-1 H')^-1 e1
  const Matrix n_ht = record(spd_solve(linalg::add_scaled_identity(linalg::gram(g), delta), h.transpose()));
  Matrix inner2 = h * n_ht;
  inner2 = 0.5 * (inner2 + inner2.transpose());
  inner2.diagonal().array() += v1.array().inverse() / c2;
  const Vector beta = record(spd_solve(inner2, Vector::Ones(h.rows())));
  Vector u2 = n_ht * beta;
  return {std::move(u1), std::move(u2)};
}

Matrix weighted_gram(const Matrix& a, const Vector& v) {
  Matrix g = a.transpose() * v.asDiagonal() * a;
  g.triangularView<Eigen::StrictlyLower>() = g.transpose();
  return g;
}

}  // namespace

namespace detail {

WeightedNormalEquations::WeightedNormalEquations(const Matrix& x1, const Matrix& x2hat, const Vector& v1,
                                                 const Vector& v2) {
  const Matrix h = augment(x1);
  const Matrix g = augment(x2hat);
  hth_ = linalg::gram(h);
  gtg_ = linalg::gram(g);
  htd1h_ = weighted_gram(h, v1);
  gtd2g_ = weighted_gram(g, v2);
  htd1e_ = h.transpose() * v1;
  gtd2e_ = g.transpose() * v2;
}

std::pair<Vector, Vector> WeightedNormalEquations::solve(double c1, double c2, double delta,
                                                         std::vector<SpdSolveReport>* reports) const {
  // (G'D2 G + (H'H + dI)/c1) u1 = -G'D2 e2
  Matrix a1 = gtd2g_ + hth_ / c1;
  a1.diagonal().array() += delta / c1;
  auto s1 = spd_solve(a1, -gtd2e_);
  // (H'D1 H + (G'G + dI)/c2) u2 = H'D1 e1
  Matrix a2 = htd1h_ + gtg_ / c2;
  a2.diagonal().array() += delta / c2;
  auto s2 = spd_solve(a2, htd1e_);
  if (reports) {
    reports->push_back(s1.report);
    reports->push_back(s2.report);
  }
  return {Vector(s1.x.col(0)), Vector(s2.x.col(0))};
}

LinearModel planes_from_solution(const Vector& u1, const Vector& u2) {
  const Eigen::Index n = u1.size() - 1;
  LinearModel model;
  model.plane1.w = u1.head(n);
  model.plane1.b = u1(n);
  model.plane2.w = u2.head(n);
  model.plane2.b = u2(n);
  if (!u1.allFinite() || !u2.allFinite()) throw DataError("fit: non-finite plane coefficients");
  return model;
}

}  // namespace detail

LinearModel fit_linear(const Matrix& x1, const Matrix& x2hat, const WeightVector& d1, const WeightVector& d2,
                       double c1, double c2, double delta, SolverForm form) {
  if (x1.cols() != x2hat.cols()) throw DimensionError("fit_linear: class matrices differ in attribute count");
  if (x1.rows() == 0 || x2hat.rows() == 0) throw DimensionError("fit_linear: empty class matrix");
  check_weights(d1, x1.rows(), "minority");
  check_weights(d2, x2hat.rows(), "majority");
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw ConfigError("fit_linear: c1 and c2 must be > 0");
  if (!(delta >= 0.0)) throw ConfigError("fit_linear: delta must be >= 0");

  const Vector v1 = d1.as_vector();
  const Vector v2 = d2.as_vector();
  std::vector<SpdSolveReport> reports;
  std::pair<Vector, Vector> u;
  if (form == SolverForm::dual) {
    u = solve_dual(augment(x1), augment(x2hat), v1, v2, c1, c2, delta, reports);
  } else {
    u = detail::WeightedNormalEquations(x1, x2hat, v1, v2).solve(c1, c2, delta, &reports);
  }
  LinearModel model = detail::planes_from_solution(u.first, u.second);
  model.config.c1 = c1;
  model.config.c2 = c2;
  model.config.delta = delta;
  model.config.solver = form;
  model.summary.minority_count = static_cast<std::size_t>(x1.rows());
  model.summary.majority_count = static_cast<std::size_t>(x2hat.rows());
  model.summary.majority_kept = static_cast<std::size_t>(x2hat.rows());
  model.summary.solves = std::move(reports);
  return model;
}

LinearModel fit_lstsvm_baseline(const Matrix& x1, const Matrix& x2, double c1, double c2, double delta) {
  if (x1.cols() != x2.cols()) throw DimensionError("fit_lstsvm_baseline: attribute count mismatch");
  if (x1.rows() == 0 || x2.rows() == 0) throw DimensionError("fit_lstsvm_baseline: empty class matrix");
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw ConfigError("fit_lstsvm_baseline: c1 and c2 must be > 0");
  const Matrix h = augment(x1);
  const Matrix g = augment(x2);
  const Matrix hth = linalg::gram(h);
  const Matrix gtg = linalg::gram(g);

  const auto s1 = spd_solve(gtg + linalg::add_scaled_identity(hth, delta) / c1,
                            -(g.transpose() * Vector::Ones(g.rows())));
  const auto s2 = spd_solve(hth + linalg::add_scaled_identity(gtg, delta) / c2,
                            h.transpose() * Vector::Ones(h.rows()));
  LinearModel model = detail::planes_from_solution(s1.x.col(0), s2.x.col(0));
  model.config.c1 = c1;
  model.config.c2 = c2;
  model.config.delta = delta;
  model.config.subsample_enabled = false;
  model.config.weights_enabled = false;
  model.summary.minority_count = static_cast<std::size_t>(x1.rows());
  model.summary.majority_count = static_cast<std::size_t>(x2.rows());
  model.summary.majority_kept = static_cast<std::size_t>(x2.rows());
  model.summary.solves = {s1.report, s2.report};
  return model;
}

KernelModel fit_kernel(const Matrix& x1, const Matrix& x2hat, const WeightVector& d1, const WeightVector& d2,
                       const TrainConfig& config) {
  config.validate();
  if (config.kernel.type != KernelType::gaussian) throw ConfigError("fit_kernel: gaussian kernel required");
  if (x1.cols() != x2hat.cols()) throw DimensionError("fit_kernel: class matrices differ in attribute count");
  if (x1.rows() == 0 || x2hat.rows() == 0) throw DimensionError("fit_kernel: empty class matrix");
  check_weights(d1, x1.rows(), "minority");
  check_weights(d2, x2hat.rows(), "majority");

  KernelModel model;
  model.kernel = config.kernel;
  model.config = config;
  model.reference.resize(x1.rows() + x2hat.rows(), x1.cols());
  model.reference.topRows(x1.rows()) = x1;
  model.reference.bottomRows(x2hat.rows()) = x2hat;
  model.gram = gaussian_kernel_matrix(model.reference, model.reference, config.kernel.sigma);
  model.gram.triangularView<Eigen::StrictlyLower>() = model.gram.transpose();

  const Eigen::Index m1 = x1.rows();
  const Eigen::Index m2 = x2hat.rows();
  const Matrix p = augment(model.gram.topRows(m1));
  const Matrix q = augment(model.gram.bottomRows(m2));
  const Vector v1 = d1.as_vector();
  const Vector v2 = d2.as_vector();

  std::vector<SpdSolveReport> reports;
  std::pair<Vector, Vector> z;
  if (config.solver == SolverForm::dual) {
    z = solve_dual(p, q, v1, v2, config.c1, config.c2, config.delta, reports);
  } else {
    // (Q'D2 Q + (P'P + dI)/c1) z1 = -Q'D2 e2 and its mirror image.
    Matrix a1 = weighted_gram(q, v2) + linalg::gram(p) / config.c1;
    a1.diagonal().array() += config.delta / config.c1;
    auto s1 = spd_solve(a1, -(q.transpose() * v2));
    Matrix a2 = weighted_gram(p, v1) + linalg::gram(q) / config.c2;
    a2.diagonal().array() += config.delta / config.c2;
    auto s2 = spd_solve(a2, p.transpose() * v1);
    reports = {s1.report, s2.report};
    z = {Vector(s1.x.col(0)), Vector(s2.x.col(0))};
  }
  if (!z.first.allFinite() || !z.second.allFinite()) throw DataError("fit_kernel: non-finite coefficients");
  const Eigen::Index mref = model.reference.rows();
  model.w1 = z.first.head(mref);
  model.b1 = z.first(mref);
  model.w2 = z.second.head(mref);
  model.b2 = z.second(mref);
  model.summary.minority_count = static_cast<std::size_t>(m1);
  model.summary.majority_count = static_cast<std::size_t>(m2);
  model.summary.majority_kept = static_cast<std::size_t>(m2);
  model.summary.solves = std::move(reports);
  return model;
}

// ---------------------------------------------------------------------------
// Prediction

namespace {

Prediction decide(double f1, double norm1, double f2, double norm2) {
  const bool degenerate1 = !(norm1 > 0.0);
  const bool degenerate2 = !(norm2 > 0.0);
  if (degenerate1 && degenerate2) throw DataError("predict: both planes are degenerate");
  constexpr double inf = std::numeric_limits<double>::infinity();
  Prediction p;
  p.dist1 = degenerate1 ? inf : std::abs(f1) / norm1;
  p.dist2 = degenerate2 ? inf : std::abs(f2) / norm2;
  p.label = p.dist1 <= p.dist2 ? kMinority : kMajority;
  return p;
}

Vector prepare_input(const std::optional<ScalingParams>& scaling, const Vector& x, std::size_t dim) {
  if (static_cast<std::size_t>(x.size()) != dim) {
    throw DimensionError("predict: dimension mismatch, model expects " + std::to_string(dim) + " features, got " +
                         std::to_string(x.size()));
  }
  return scaling ? minmax_apply(*scaling, x) : x;
}

}  // namespace

Prediction predict_linear(const LinearModel& model, const Vector& x_raw) {
  const Vector x = prepare_input(model.scaling, x_raw, model.dimension());
  return decide(model.plane1.w.dot(x) + model.plane1.b, model.plane1.w.norm(),
                model.plane2.w.dot(x) + model.plane2.b, model.plane2.w.norm());
}

Prediction predict_kernel(const KernelModel& model, const Vector& x_raw) {
  const Vector x = prepare_input(model.scaling, x_raw, model.dimension());
  const Vector kx = gaussian_kernel_matrix(x.transpose(), model.reference, model.kernel.sigma).row(0).transpose();
  const double q1 = model.w1.dot(model.gram * model.w1);
  const double q2 = model.w2.dot(model.gram * model.w2);
  return decide(kx.dot(model.w1) + model.b1, q1 > 0.0 ? std::sqrt(q1) : 0.0, kx.dot(model.w2) + model.b2,
                q2 > 0.0 ? std::sqrt(q2) : 0.0);
}

Prediction predict(const Model& model, const Vector& x_raw) {
  return std::visit(
      [&](const auto& m) -> Prediction {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, LinearModel>) {
          return predict_linear(m, x_raw);
        } else {
          return predict_kernel(m, x_raw);
        }
      },
      model);
}

std::vector<Prediction> predict(const Model& model, const Matrix& x_raw) {
  if (static_cast<std::size_t>(x_raw.cols()) != model_dimension(model)) {
    throw DimensionError("predict: dimension mismatch, model expects " + std::to_string(model_dimension(model)) +
                         " features, got " + std::to_string(x_raw.cols()));
  }
  std::vector<Prediction> out;
  out.reserve(static_cast<std::size_t>(x_raw.rows()));
  if (const auto* km = std::get_if<KernelModel>(&model)) {
    // Batch path: one kernel matrix for all rows, surface norms computed once.
    const Matrix x = km->scaling ? minmax_apply(*km->scaling, x_raw) : x_raw;
    const Matrix k = gaussian_kernel_matrix(x, km->reference, km->kernel.sigma);
    const double q1 = km->w1.dot(km->gram * km->w1);
    const double q2 = km->w2.dot(km->gram * km->w2);
    const Vector f1 = k * km->w1;
    const Vector f2 = k * km->w2;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      out.push_back(decide(f1(i) + km->b1, q1 > 0.0 ? std::sqrt(q1) : 0.0, f2(i) + km->b2,
                           q2 > 0.0 ? std::sqrt(q2) : 0.0));
    }
    return out;
  }
  for (Eigen::Index i = 0; i < x_raw.rows(); ++i) out.push_back(predict(model, Vector(x_raw.row(i).transpose())));
  return out;
}

std::size_t model_dimension(const Model& model) {
  return std::visit([](const auto& m) { return m.dimension(); }, model);
}

// ---------------------------------------------------------------------------
// Pipeline

namespace detail {

PreparedTraining prepare_training(const LabeledDataset& ds, const TrainConfig& config) {
  config.validate();
  PreparedTraining out;
  out.scaling = minmax_fit(ds.features());
  const LabeledDataset scaled = ds.scaled(out.scaling);
  const Matrix& xs = scaled.features();
  ClassSplit split = split_by_class(scaled);
  out.majority_count = split.majority_rows.size();

  std::optional<Matrix> majority_similarity;
  const auto majority_sim = [&]() -> const Matrix& {
    if (!majority_similarity) majority_similarity = indiscernibility_matrix(split.majority, config.fuzzy).values;
    return *majority_similarity;
  };

  std::vector<std::size_t> kept;
  if (config.subsample_enabled) {
    PositiveRegionScores scores;
    if (config.fuzzy.score_mode == ScoreMode::density) {
      scores.scores = density_scores(majority_sim());
      scores.rows = split.majority_rows;
      scores.mode = ScoreMode::density;
      scores.params = config.fuzzy;
    } else {
      scores = positive_region_scores(xs, ds.labels(), kMajority, config.fuzzy);
    }
    kept = subsample_majority(scores, config.tau).kept;
  } else {
    kept.resize(split.majority_rows.size());
    for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;
  }

  out.majority_kept.resize(static_cast<Eigen::Index>(kept.size()), xs.cols());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    out.majority_kept.row(static_cast<Eigen::Index>(i)) = split.majority.row(static_cast<Eigen::Index>(kept[i]));
  }
  out.minority = std::move(split.minority);

  if (config.weights_enabled) {
    out.majority_weights = weights_from_similarity(majority_sim(), kept, ClassTag::majority);
    out.minority_weights = class_weights(out.minority, config.fuzzy, ClassTag::minority);
  } else {
    out.majority_weights = {std::vector<double>(kept.size(), 1.0), ClassTag::majority};
    out.minority_weights = {std::vector<double>(static_cast<std::size_t>(out.minority.rows()), 1.0),
                            ClassTag::minority};
  }
  return out;
}

}  // namespace detail

Model fit_frlstsvm(const LabeledDataset& ds, const TrainConfig& config) {
  detail::PreparedTraining prep = detail::prepare_training(ds, config);
  if (config.kernel.type == KernelType::linear) {
    LinearModel model = fit_linear(prep.minority, prep.majority_kept, prep.minority_weights,
                                   prep.majority_weights, config.c1, config.c2, config.delta, config.solver);
    model.config = config;
    model.scaling = prep.scaling;
    model.summary.majority_count = prep.majority_count;
    return model;
  }
  KernelModel model = fit_kernel(prep.minority, prep.majority_kept, prep.minority_weights,
                                 prep.majority_weights, config);
  model.scaling = prep.scaling;
  model.summary.majority_count = prep.majority_count;
  return model;
}

}  // namespace frlstsvm
