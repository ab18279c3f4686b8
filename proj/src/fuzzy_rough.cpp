#include "frlstsvm/fuzzy_rough.hpp"

#include <algorithm>
#include <cmath>

#include "frlstsvm/dataset.hpp"

namespace frlstsvm {

void FuzzyParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be a finite value > 0");
}

std::string_view to_string(TNorm t) {
  switch (t) {
    case TNorm::minimum: return "minimum";
    case TNorm::product: return "product";
    case TNorm::lukasiewicz: return "lukasiewicz";
  }
  return "?";
}

std::string_view to_string(Implicator i) {
  switch (i) {
    case Implicator::lukasiewicz: return "lukasiewicz";
    case Implicator::kleene_dienes: return "kleene_dienes";
  }
  return "?";
}

std::string_view to_string(ScoreMode m) {
  switch (m) {
    case ScoreMode::density: return "density";
    case ScoreMode::lower_approx: return "lower_approx";
  }
  return "?";
}

TNorm parse_tnorm(std::string_view s) {
  if (s == "minimum" || s == "min") return TNorm::minimum;
  if (s == "product") return TNorm::product;
  if (s == "lukasiewicz") return TNorm::lukasiewicz;
  throw ConfigError("unknown t-norm '" + std::string(s) + "' (minimum|product|lukasiewicz)");
}

Implicator parse_implicator(std::string_view s) {
  if (s == "lukasiewicz") return Implicator::lukasiewicz;
  if (s == "kleene_dienes" || s == "kleene-dienes") return Implicator::kleene_dienes;
  throw ConfigError("unknown implicator '" + std::string(s) + "' (lukasiewicz|kleene_dienes)");
}

ScoreMode parse_score_mode(std::string_view s) {
  if (s == "density") return ScoreMode::density;
  if (s == "lower_approx" || s == "lower-approx") return ScoreMode::lower_approx;
  throw ConfigError("unknown score mode '" + std::string(s) + "' (density|lower-approx)");
}

double apply_tnorm(TNorm t, double a, double b) noexcept {
  switch (t) {
    case TNorm::minimum: return std::min(a, b);
    case TNorm::product: return a * b;
    case TNorm::lukasiewicz: return std::max(0.0, a + b - 1.0);
  }
  return 0.0;
}

double apply_implicator(Implicator i, double a, double b) noexcept {
  switch (i) {
    case Implicator::lukasiewicz: return std::min(1.0, 1.0 - a + b);
    case Implicator::kleene_dienes: return std::max(1.0 - a, b);
  }
  return 0.0;
}

double attribute_similarity(double ax, double ay, double range, double gamma) noexcept {
  return std::max(0.0, 1.0 - gamma * std::abs(ax - ay) / range);
}

namespace {

// Attributes are contiguous per instance when reading columns of X^T.
double similarity_of(const double* x, const double* y, Eigen::Index n, const FuzzyParams& p) noexcept {
  double acc = 1.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    acc = apply_tnorm(p.tnorm, acc, attribute_similarity(x[a], y[a], 1.0, p.gamma));
    if (acc == 0.0) break;
  }
  return acc;
}

}  // namespace

double row_similarity(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                      const Eigen::Ref<const Eigen::RowVectorXd>& y, const FuzzyParams& params) noexcept {
  double acc = 1.0;
  for (Eigen::Index a = 0; a < x.size(); ++a) {
    acc = apply_tnorm(params.tnorm, acc, attribute_similarity(x(a), y(a), 1.0, params.gamma));
  }
  return acc;
}

SimilarityMatrix indiscernibility_matrix(const Matrix& x, const FuzzyParams& params) {
  params.validate();
  if (x.rows() == 0) throw DimensionError("indiscernibility_matrix: no rows");
  const Matrix xt = x.transpose();
  const Eigen::Index p = x.rows();
  const Eigen::Index n = x.cols();
  SimilarityMatrix out;
  out.values.resize(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    out.values(j, j) = 1.0;
    const double* yj = xt.col(j).data();
    for (Eigen::Index i = j + 1; i < p; ++i) {
      const double s = similarity_of(xt.col(i).data(), yj, n, params);
      out.values(i, j) = s;
      out.values(j, i) = s;
    }
  }
  out.row_indices.resize(static_cast<std::size_t>(p));
  for (std::size_t i = 0; i < out.row_indices.size(); ++i) out.row_indices[i] = i;
  return out;
}

Matrix cross_similarity(const Matrix& a, const Matrix& b, const FuzzyParams& params) {
  params.validate();
  if (a.cols() != b.cols()) throw DimensionError("cross_similarity: attribute count mismatch");
  const Matrix at = a.transpose();
  const Matrix bt = b.transpose();
  Matrix out(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out(i, j) = similarity_of(at.col(i).data(), bt.col(j).data(), a.cols(), params);
    }
  }
  return out;
}

double lower_approx_membership(std::span<const double> sim_row, std::span<const double> concept_row,
                               Implicator implicator) {
  if (sim_row.size() != concept_row.size()) {
    throw DimensionError("lower_approx_membership: length mismatch");
  }
  if (sim_row.empty()) throw DimensionError("lower_approx_membership: empty input");
  double inf = 1.0;
  for (std::size_t i = 0; i < sim_row.size(); ++i) {
    inf = std::min(inf, apply_implicator(implicator, sim_row[i], concept_row[i]));
  }
  return inf;
}

std::vector<double> density_scores(const Matrix& similarity) {
  const Eigen::Index p = similarity.rows();
  std::vector<double> scores(static_cast<std::size_t>(p), 1.0);
  if (p < 2) return scores;
  for (Eigen::Index j = 0; j < p; ++j) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p; ++i) {
      if (i != j) sum += similarity(i, j);
    }
    scores[static_cast<std::size_t>(j)] = sum / static_cast<double>(p - 1);
  }
  return scores;
}

PositiveRegionScores positive_region_scores(const Matrix& x_all, std::span<const int> labels,
                                            int target_class, const FuzzyParams& params) {
  params.validate();
  if (static_cast<std::size_t>(x_all.rows()) != labels.size()) {
    throw DimensionError("positive_region_scores: row/label count mismatch");
  }
  PositiveRegionScores out;
  out.mode = params.score_mode;
  out.params = params;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == target_class) out.rows.push_back(i);
  }
  if (out.rows.empty()) {
    throw DataError("positive_region_scores: class " + std::to_string(target_class) + " is absent");
  }
  Matrix target(static_cast<Eigen::Index>(out.rows.size()), x_all.cols());
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    target.row(static_cast<Eigen::Index>(i)) = x_all.row(static_cast<Eigen::Index>(out.rows[i]));
  }

  if (params.score_mode == ScoreMode::density) {
    out.scores = density_scores(indiscernibility_matrix(target, params).values);
    return out;
  }

  const Matrix sim = cross_similarity(x_all, target, params);
  std::vector<double> sim_col(labels.size());
  std::vector<double> concept_col(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) concept_col[i] = labels[i] == target_class ? 1.0 : 0.0;
  out.scores.reserve(out.rows.size());
  for (Eigen::Index j = 0; j < sim.cols(); ++j) {
    for (std::size_t i = 0; i < labels.size(); ++i) sim_col[i] = sim(static_cast<Eigen::Index>(i), j);
    out.scores.push_back(lower_approx_membership(sim_col, concept_col, params.implicator));
  }
  return out;
}

SubsampleResult subsample_majority(const PositiveRegionScores& scores, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in [0, 1]");
  SubsampleResult out;
  out.tau = tau;
  out.scores = scores;
  for (std::size_t i = 0; i < scores.scores.size(); ++i) {
    (scores.scores[i] >= tau ? out.kept : out.removed).push_back(i);
  }
  if (out.kept.empty()) {
    throw EmptySelectionError("tau=" + std::to_string(tau) +
                                  " removes every majority instance; lower tau",
                              tau);
  }
  return out;
}

WeightVector weights_from_similarity(const Matrix& similarity, std::span<const std::size_t> members,
                                     ClassTag tag) {
  std::vector<std::size_t> all;
  if (members.empty()) {
    all.resize(static_cast<std::size_t>(similarity.rows()));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    members = all;
  }
  WeightVector out;
  out.tag = tag;
  out.weights.assign(members.size(), 1.0);
  if (members.size() < 2) return out;
  const auto denom = static_cast<double>(members.size() - 1);
  for (std::size_t a = 0; a < members.size(); ++a) {
    const auto col = static_cast<Eigen::Index>(members[a]);
    double sum = 0.0;
    for (std::size_t b = 0; b < members.size(); ++b) {
      if (b != a) sum += similarity(static_cast<Eigen::Index>(members[b]), col);
    }
    out.weights[a] = std::clamp(sum / denom, kWeightFloor, 1.0);
  }
  return out;
}

WeightVector class_weights(const Matrix& x_class, const FuzzyParams& params, ClassTag tag) {
  if (x_class.rows() == 0) throw DimensionError("class_weights: empty class");
  return weights_from_similarity(indiscernibility_matrix(x_class, params).values, {}, tag);
}

}  // namespace frlstsvm
