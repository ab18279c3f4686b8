#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace frlstsvm {

/// Binary confusion counts, +1 being the positive (minority) class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fn + fp + tn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& o) noexcept {
    tp += o.tp;
    fn += o.fn;
    fp += o.fp;
    tn += o.tn;
    return *this;
  }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// standard:      Sen = TP/(TP+FN), Spe = TN/(TN+FP)
/// paper_literal: Sen = TP/(TP+FP), Spe = TN/(TN+FN)
enum class MetricConvention { standard, paper_literal };

std::string_view to_string(MetricConvention c);
MetricConvention parse_metric_convention(std::string_view s);

struct MetricReport {
  double sensitivity = 0.0;
  double specificity = 0.0;
  double accuracy = 0.0;
  double gmean = 0.0;
  MetricConvention convention = MetricConvention::standard;
  /// Set when a ratio had a zero denominator and was defined as 0.
  bool degenerate = false;
};

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred);
MetricReport report(const ConfusionMatrix& cm, MetricConvention convention = MetricConvention::standard);

/// `dataset,config,acc,sen,spe,gmean,convention`
std::string metrics_csv_header();
std::string metrics_csv_line(std::string_view dataset, std::string_view config, const MetricReport& r);
/// Aligned human-readable table (values in percent).
std::string format_report_table(const ConfusionMatrix& cm, const MetricReport& r);

}  // namespace frlstsvm
