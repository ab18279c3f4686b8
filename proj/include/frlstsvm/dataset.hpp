#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "frlstsvm/linalg.hpp"

namespace frlstsvm {

/// Minority label. Loaders remap the user's positive class to this value.
inline constexpr int kMinority = +1;
/// Majority label; every other class value maps here.
inline constexpr int kMajority = -1;

/// Min-max scaling state observed on training rows.
struct ScalingParams {
  std::vector<double> minimum;
  /// Observed range per attribute; 1 for constant attributes.
  std::vector<double> range;

  std::size_t size() const noexcept { return minimum.size(); }
  bool operator==(const ScalingParams&) const = default;
};

/// Feature matrix with binary labels (+1 minority, -1 majority).
class LabeledDataset {
 public:
  LabeledDataset(Matrix features, std::vector<int> labels,
                 std::vector<std::string> attribute_names = {});

  const Matrix& features() const noexcept { return features_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& attribute_names() const noexcept { return names_; }
  const std::optional<ScalingParams>& scaling() const noexcept { return scaling_; }

  std::size_t rows() const noexcept { return labels_.size(); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(features_.cols()); }
  std::size_t minority_count() const noexcept;
  std::size_t majority_count() const noexcept;

  /// Rows in the given order. Subsets may hold a single class (folds of a
  /// dataset are checked where they are consumed).
  LabeledDataset subset(std::span<const std::size_t> rows) const;

  /// Copy with scaled features and the scaling recorded.
  LabeledDataset scaled(const ScalingParams& params) const;

  bool operator==(const LabeledDataset& other) const;

 private:
  struct Unchecked {};
  LabeledDataset(Unchecked, Matrix features, std::vector<int> labels,
                 std::vector<std::string> names, std::optional<ScalingParams> scaling);

  Matrix features_;
  std::vector<int> labels_;
  std::vector<std::string> names_;
  std::optional<ScalingParams> scaling_;
};

/// Receives non-fatal diagnostics (e.g. "+1 is the larger class").
/// The default handler prints to standard error.
using WarningHandler = std::function<void(const std::string&)>;
void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

struct CsvOptions {
  /// Column holding the class value, by header name or 0-based index.
  /// Defaults to the last column.
  std::variant<std::monostate, std::string, std::size_t> label_column;
  std::string positive_label;
  bool has_header = true;
};

LabeledDataset load_csv(const std::filesystem::path& path, const CsvOptions& options);
/// Reads a feature-only CSV (no label column), as used for prediction.
Matrix load_feature_csv(const std::filesystem::path& path, bool has_header,
                        std::optional<std::size_t> skip_column = std::nullopt);
void write_csv(const LabeledDataset& ds, const std::filesystem::path& path,
               const std::string& positive_label = "positive",
               const std::string& negative_label = "negative");

/// KEEL `.dat` reader. Keywords are case-insensitive; nominal inputs and
/// multiple outputs are rejected.
LabeledDataset load_keel(const std::filesystem::path& path, const std::string& positive_label);

ScalingParams minmax_fit(const Matrix& x);
inline ScalingParams minmax_fit(const LabeledDataset& ds) { return minmax_fit(ds.features()); }
/// (x - min) / range clamped to [0, 1]; constant columns map to 0.
Matrix minmax_apply(const ScalingParams& params, const Matrix& x);
Vector minmax_apply(const ScalingParams& params, const Vector& x);

struct ClassSplit {
  Matrix minority;
  Matrix majority;
  std::vector<std::size_t> minority_rows;
  std::vector<std::size_t> majority_rows;
};

ClassSplit split_by_class(const LabeledDataset& ds);

/// Stratified fold assignment.
struct FoldPlan {
  std::size_t k = 0;
  std::vector<std::size_t> assignments;
  std::uint64_t seed = 0;

  std::vector<std::size_t> train_rows(std::size_t fold) const;
  std::vector<std::size_t> test_rows(std::size_t fold) const;
  bool operator==(const FoldPlan&) const = default;
};

FoldPlan stratified_kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed);
inline FoldPlan stratified_kfold(const LabeledDataset& ds, std::size_t k, std::uint64_t seed) {
  return stratified_kfold(ds.labels(), k, seed);
}

/// Majority count over minority count.
double imbalance_ratio(const LabeledDataset& ds);

}  // namespace frlstsvm
