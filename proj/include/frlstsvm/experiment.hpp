#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "frlstsvm/classifier.hpp"
#include "frlstsvm/dataset.hpp"
#include "frlstsvm/metrics.hpp"

namespace frlstsvm {

struct GridSpec {
  std::vector<double> tau;
  std::vector<double> gamma;
  std::vector<double> c1;
  std::vector<double> c2;
  std::vector<double> sigma;
};

/// tau 0:0.05:1, gamma 0.1:0.1:2, c in {2^-8, 2^-6, ..., 2^8}, sigma in {2^-4, ..., 2^4}.
GridSpec default_grid();

struct ExperimentConfig {
  std::string dataset;
  /// "csv", "keel", or empty to go by the file extension (*.csv is CSV).
  std::string format;
  std::string positive_label = "positive";
  /// Header name or 0-based index for CSV input; empty means last column.
  std::string label_column;
  bool csv_header = true;

  /// Fixed (non-searched) training settings: delta, kernel type, t-norm,
  /// implicator, score mode, stage switches and solver form.
  TrainConfig base;
  GridSpec grid = default_grid();
  /// Search c1 and c2 independently instead of tying c2 = c1.
  bool untie_c = false;

  std::size_t folds = 10;
  /// 0 selects folds - 1.
  std::size_t inner_folds = 0;
  std::size_t repeats = 10;
  std::uint64_t seed = 1;
  MetricConvention convention = MetricConvention::standard;
  std::size_t workers = 1;
  std::string out;

  ExperimentConfig();
  std::size_t effective_inner_folds() const noexcept { return inner_folds == 0 ? folds - 1 : inner_folds; }
  void validate() const;
};

/// Applies one `key = value` setting. Throws ConfigError naming unknown keys
/// and ill-typed or out-of-range values.
void apply_config_entry(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Parses flat `key = value` text (`#` comments, comma-separated lists) on
/// top of `base`, then validates.
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {});
ExperimentConfig parse_config(const std::filesystem::path& path, ExperimentConfig base = {});

LabeledDataset load_experiment_dataset(const ExperimentConfig& config);

struct GridPoint {
  double tau = 0.0;
  double gamma = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double sigma = 1.0;

  bool operator==(const GridPoint&) const = default;
};

/// Grid points in selection order (tau, gamma, c1, c2, sigma ascending).
/// Dimensions not used by the configured pipeline collapse to one value.
std::vector<GridPoint> enumerate_grid(const ExperimentConfig& config);
TrainConfig train_config_for(const ExperimentConfig& config, const GridPoint& point);

/// G-mean on `validation` of the model fitted on `train`, for every grid
/// point; nullopt where the fit fails (e.g. tau empties the majority class).
/// Equivalent to calling fit_frlstsvm per point, with shared work hoisted.
std::vector<std::optional<double>> evaluate_grid(const LabeledDataset& train, const LabeledDataset& validation,
                                                 const ExperimentConfig& config,
                                                 const std::vector<GridPoint>& points);

struct FoldRecord {
  std::size_t repeat = 0;
  std::size_t fold = 0;
  GridPoint best;
  double inner_gmean = 0.0;
  std::size_t skipped_points = 0;
  std::size_t majority_kept = 0;
  ConfusionMatrix confusion;
  MetricReport metrics;
};

struct MetricSummary {
  double mean = 0.0;
  /// Population standard deviation over the outer folds.
  double stddev = 0.0;
};

struct CvResult {
  std::string dataset;
  std::vector<FoldRecord> folds;
  MetricSummary accuracy;
  MetricSummary sensitivity;
  MetricSummary specificity;
  MetricSummary gmean;
  MetricConvention convention = MetricConvention::standard;
  /// Not part of the serialized results.
  double wall_seconds = 0.0;
};

/// Thrown when every grid point fails on some outer fold; carries the folds
/// completed before the failure.
class CvAbortedError : public Error {
 public:
  CvAbortedError(const std::string& what, CvResult partial) : Error(what), partial_(std::move(partial)) {}
  const CvResult& partial() const noexcept { return partial_; }

 private:
  CvResult partial_;
};

MetricSummary summarize(const std::vector<double>& values);

/// Repeated stratified k-fold with an inner (k-1)-fold grid search on each
/// outer training part. Results do not depend on config.workers.
CvResult run_nested_cv(const ExperimentConfig& config, const LabeledDataset& ds);

/// One JSON object per fold, then a summary object. Deterministic bytes.
std::string cv_result_jsonl(const CvResult& result, const ExperimentConfig& config);
/// Aligned summary table in percent.
std::string cv_result_table(const CvResult& result);
std::string describe_config(const ExperimentConfig& config);

}  // namespace frlstsvm
