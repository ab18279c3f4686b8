#include "frlstsvm/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "frlstsvm/dataset.hpp"
#include "frlstsvm/error.hpp"

namespace frlstsvm {

std::string_view to_string(MetricConvention c) {
  return c == MetricConvention::standard ? "standard" : "paper_literal";
}

MetricConvention parse_metric_convention(std::string_view s) {
  if (s == "standard") return MetricConvention::standard;
  if (s == "paper_literal" || s == "paper-literal" || s == "literal") return MetricConvention::paper_literal;
  throw ConfigError("unknown metric convention '" + std::string(s) + "' (standard|paper_literal)");
}

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) throw DimensionError("confusion: length mismatch");
  if (y_true.empty()) throw DimensionError("confusion: empty input");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if ((t != kMinority && t != kMajority) || (p != kMinority && p != kMajority)) {
      throw DataError("confusion: labels must be +1 or -1");
    }
    if (t == kMinority) {
      (p == kMinority ? cm.tp : cm.fn)++;
    } else {
      (p == kMinority ? cm.fp : cm.tn)++;
    }
  }
  return cm;
}

MetricReport report(const ConfusionMatrix& cm, MetricConvention convention) {
  MetricReport r;
  r.convention = convention;
  const auto ratio = [&r](std::size_t num, std::size_t den) {
    if (den == 0) {
      r.degenerate = true;
      return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
  };
  if (convention == MetricConvention::standard) {
    r.sensitivity = ratio(cm.tp, cm.tp + cm.fn);
    r.specificity = ratio(cm.tn, cm.tn + cm.fp);
  } else {
    r.sensitivity = ratio(cm.tp, cm.tp + cm.fp);
    r.specificity = ratio(cm.tn, cm.tn + cm.fn);
  }
  r.accuracy = ratio(cm.tp + cm.tn, cm.total());
  r.gmean = std::sqrt(r.sensitivity * r.specificity);
  return r;
}

std::string metrics_csv_header() { return "dataset,config,acc,sen,spe,gmean,convention"; }

std::string metrics_csv_line(std::string_view dataset, std::string_view config, const MetricReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << dataset << ',' << config << ',' << r.accuracy << ',' << r.sensitivity << ',' << r.specificity << ','
     << r.gmean << ',' << to_string(r.convention);
  return os.str();
}

std::string format_report_table(const ConfusionMatrix& cm, const MetricReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%-12s %10s\n"
                "%-12s %10zu\n%-12s %10zu\n%-12s %10zu\n%-12s %10zu\n"
                "%-12s %10.2f\n%-12s %10.2f\n%-12s %10.2f\n%-12s %10.2f\n%-12s %10s\n",
                "metric", "value", "TP", cm.tp, "FN", cm.fn, "FP", cm.fp, "TN", cm.tn, "accuracy",
                100.0 * r.accuracy, "sensitivity", 100.0 * r.sensitivity, "specificity",
                100.0 * r.specificity, "g-mean", 100.0 * r.gmean, "convention",
                std::string(to_string(r.convention)).c_str());
  std::string out = buf;
  if (r.degenerate) out += "note: a zero denominator was defined as 0\n";
  return out;
}

}  // namespace frlstsvm
