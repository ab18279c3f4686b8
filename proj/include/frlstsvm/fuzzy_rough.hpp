#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frlstsvm/linalg.hpp"

namespace frlstsvm {

enum class TNorm { minimum, product, lukasiewicz };
enum class Implicator { lukasiewicz, kleene_dienes };

/// How the majority instances are scored before thresholding.
///  - density: mean similarity to the other same-class instances. Points in
///    dense regions score high, isolated points low.
///  - lower_approx: fuzzy lower approximation of the crisp decision relation,
///    inf_x I(R(x, y), [d(x) == d(y)]) over all training instances.
enum class ScoreMode { density, lower_approx };

struct FuzzyParams {
  double gamma = 1.0;
  TNorm tnorm = TNorm::minimum;
  Implicator implicator = Implicator::lukasiewicz;
  ScoreMode score_mode = ScoreMode::density;

  void validate() const;
  bool operator==(const FuzzyParams&) const = default;
};

/// Lower bound applied to every instance weight.
inline constexpr double kWeightFloor = 1e-6;

std::string_view to_string(TNorm t);
std::string_view to_string(Implicator i);
std::string_view to_string(ScoreMode m);
TNorm parse_tnorm(std::string_view s);
Implicator parse_implicator(std::string_view s);
/// Accepts "density", "lower_approx" and "lower-approx".
ScoreMode parse_score_mode(std::string_view s);

double apply_tnorm(TNorm t, double a, double b) noexcept;
double apply_implicator(Implicator i, double a, double b) noexcept;

/// max(0, 1 - gamma * |ax - ay| / range).
double attribute_similarity(double ax, double ay, double range, double gamma) noexcept;

/// Pairwise fuzzy indiscernibility over all attributes of (scaled) rows.
struct SimilarityMatrix {
  Matrix values;
  std::vector<std::size_t> row_indices;

  std::size_t size() const noexcept { return static_cast<std::size_t>(values.rows()); }
};

/// Similarity between two scaled rows (attribute range 1 on scaled data).
double row_similarity(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                      const Eigen::Ref<const Eigen::RowVectorXd>& y, const FuzzyParams& params) noexcept;

/// Square matrix over the rows of `x`. Each unordered pair is evaluated once
/// and mirrored; the diagonal is exactly 1.
SimilarityMatrix indiscernibility_matrix(const Matrix& x, const FuzzyParams& params);

/// Rectangular similarities between rows of `a` and rows of `b`.
Matrix cross_similarity(const Matrix& a, const Matrix& b, const FuzzyParams& params);

/// inf over x of I(sim[x], concept[x]).
double lower_approx_membership(std::span<const double> sim_row, std::span<const double> concept_row,
                               Implicator implicator);

struct PositiveRegionScores {
  std::vector<double> scores;
  /// Source rows (into the scored matrix) for each score.
  std::vector<std::size_t> rows;
  ScoreMode mode = ScoreMode::density;
  FuzzyParams params;
};

/// Scores every row of class `target_class` in `x_all`.
PositiveRegionScores positive_region_scores(const Matrix& x_all, std::span<const int> labels,
                                            int target_class, const FuzzyParams& params);

/// Density scores straight from a same-class similarity matrix.
std::vector<double> density_scores(const Matrix& similarity);

struct SubsampleResult {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> removed;
  PositiveRegionScores scores;
  double tau = 0.0;
};

/// Keeps exactly {i : score_i >= tau}, in order. Throws EmptySelectionError
/// when nothing survives.
SubsampleResult subsample_majority(const PositiveRegionScores& scores, double tau);

enum class ClassTag { minority, majority };

struct WeightVector {
  std::vector<double> weights;
  ClassTag tag = ClassTag::majority;

  Vector as_vector() const { return Eigen::Map<const Vector>(weights.data(), static_cast<Eigen::Index>(weights.size())); }
};

/// Mean similarity of each instance to the other instances of its class,
/// clamped to [kWeightFloor, 1]. A single instance gets weight 1.
WeightVector class_weights(const Matrix& x_class, const FuzzyParams& params, ClassTag tag);

/// Same as class_weights, reading a precomputed similarity matrix restricted
/// to `members` (all rows when empty).
WeightVector weights_from_similarity(const Matrix& similarity, std::span<const std::size_t> members,
                                     ClassTag tag);

}  // namespace frlstsvm
