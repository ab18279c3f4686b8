#include "frlstsvm/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "frlstsvm/classifier.hpp"
#include "frlstsvm/experiment.hpp"
#include "frlstsvm/fuzzy_rough.hpp"
#include "frlstsvm/metrics.hpp"
#include "frlstsvm/model_io.hpp"

namespace frlstsvm {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// String-valued flags that map one-to-one onto configuration keys.
class FlagSet {
 public:
  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto& slot = values_[key];
    options_.emplace_back(key, app->add_option(flag, slot, help));
  }

  void add_switch(CLI::App* app, const std::string& flag, const std::string& key, const std::string& value,
                  const std::string& help) {
    switches_.emplace_back(key, value, app->add_flag(flag, help));
  }

  void apply(ExperimentConfig& config) const {
    for (const auto& [key, opt] : options_) {
      if (opt->count() > 0) apply_config_entry(config, key, values_.at(key));
    }
    for (const auto& [key, value, opt] : switches_) {
      if (opt->count() > 0) apply_config_entry(config, key, value);
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, CLI::Option*>> options_;
  std::vector<std::tuple<std::string, std::string, CLI::Option*>> switches_;
};

void add_data_flags(FlagSet& f, CLI::App* app) {
  f.add(app, "--format", "format", "Input format: csv or keel (default: from the file extension)");
  f.add(app, "--positive-label", "positive_label", "Class value of the minority (+1) class");
  f.add(app, "--label-column", "label_column", "CSV label column, by name or 0-based index (default: last)");
  f.add_switch(app, "--no-header", "header", "false", "CSV input has no header row");
}

void add_fuzzy_flags(FlagSet& f, CLI::App* app) {
  f.add(app, "--tau", "tau", "Majority retention threshold in [0,1]");
  f.add(app, "--gamma", "gamma", "Similarity granularity (> 0)");
  f.add(app, "--score-mode", "score_mode", "density or lower-approx");
  f.add(app, "--tnorm", "tnorm", "minimum, product or lukasiewicz");
  f.add(app, "--implicator", "implicator", "lukasiewicz or kleene_dienes");
}

void add_model_flags(FlagSet& f, CLI::App* app) {
  f.add(app, "--c1", "c1", "Penalty for the minority plane");
  f.add(app, "--c2", "c2", "Penalty for the majority plane");
  f.add(app, "--delta", "delta", "Ridge term added to the Gram matrices");
  f.add(app, "--kernel", "kernel", "linear or gaussian");
  f.add(app, "--sigma", "sigma", "Gaussian kernel width");
  f.add(app, "--solver", "solver", "dual or primal");
  f.add_switch(app, "--no-weights", "weights", "false", "Use unit instance weights");
  f.add_switch(app, "--no-subsample", "subsample", "false", "Keep every majority instance");
}

double single(const std::vector<double>& values, const char* name) {
  if (values.size() != 1) throw ConfigError(std::string("--") + name + " takes a single value here");
  return values.front();
}

ExperimentConfig single_point_config() {
  ExperimentConfig c;
  const TrainConfig defaults;
  c.base = defaults;
  c.grid = {{defaults.tau}, {defaults.fuzzy.gamma}, {defaults.c1}, {defaults.c2}, {defaults.kernel.sigma}};
  return c;
}

TrainConfig single_train_config(const ExperimentConfig& c) {
  TrainConfig t = c.base;
  t.tau = single(c.grid.tau, "tau");
  t.fuzzy.gamma = single(c.grid.gamma, "gamma");
  t.c1 = single(c.grid.c1, "c1");
  t.c2 = single(c.grid.c2, "c2");
  t.kernel.sigma = single(c.grid.sigma, "sigma");
  t.validate();
  return t;
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    write_file_atomic(path, contents);
  }
}

std::vector<int> labels_of(const std::vector<Prediction>& preds) {
  std::vector<int> labels(preds.size());
  std::transform(preds.begin(), preds.end(), labels.begin(), [](const Prediction& p) { return p.label; });
  return labels;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy-rough weighted least-squares twin SVM for imbalanced binary data", "frlstsvm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "frlstsvm 0.1.0");

  // train
  auto* train = app.add_subcommand("train", "Fit a model on a labeled dataset");
  FlagSet train_flags;
  std::string train_data, train_out;
  train->add_option("data", train_data, "Labeled dataset (CSV or KEEL)")->required();
  train->add_option("--out,-o", train_out, "Model file to write")->required();
  add_data_flags(train_flags, train);
  add_fuzzy_flags(train_flags, train);
  add_model_flags(train_flags, train);

  // predict
  auto* pred = app.add_subcommand("predict", "Predict labels for a feature CSV");
  std::string pred_model, pred_data, pred_out;
  bool pred_no_header = false;
  std::optional<std::size_t> pred_skip;
  pred->add_option("data", pred_data, "Feature CSV")->required();
  pred->add_option("--model,-m", pred_model, "Model file")->required();
  pred->add_option("--out,-o", pred_out, "Predictions CSV (default: standard output)");
  pred->add_flag("--no-header", pred_no_header, "Input has no header row");
  pred->add_option("--skip-column", pred_skip, "0-based column to ignore (e.g. a label column)");

  // eval
  auto* eval = app.add_subcommand("eval", "Score a model on a labeled dataset");
  FlagSet eval_flags;
  std::string eval_model, eval_data, eval_out, eval_convention = "standard";
  eval->add_option("data", eval_data, "Labeled dataset")->required();
  eval->add_option("--model,-m", eval_model, "Model file")->required();
  eval->add_option("--out,-o", eval_out, "Metrics CSV to write");
  eval->add_option("--metric-convention", eval_convention, "standard or paper_literal");
  add_data_flags(eval_flags, eval);

  // subsample
  auto* sub = app.add_subcommand("subsample", "Score and threshold the majority class");
  FlagSet sub_flags;
  std::string sub_data, sub_out;
  sub->add_option("data", sub_data, "Labeled dataset")->required();
  sub->add_option("--out,-o", sub_out, "Score CSV (default: standard output)");
  add_data_flags(sub_flags, sub);
  add_fuzzy_flags(sub_flags, sub);

  // cv
  auto* cv = app.add_subcommand("cv", "Repeated nested cross-validation with grid search");
  FlagSet cv_flags;
  std::string cv_config, cv_data;
  cv->add_option("data", cv_data, "Labeled dataset (overrides the config file)");
  cv->add_option("--config,-c", cv_config, "Flat key = value configuration file");
  add_data_flags(cv_flags, cv);
  add_fuzzy_flags(cv_flags, cv);
  add_model_flags(cv_flags, cv);
  cv_flags.add(cv, "--metric-convention", "metric_convention", "standard or paper_literal");
  cv_flags.add(cv, "--seed", "seed", "Base seed");
  cv_flags.add(cv, "--folds", "folds", "Outer folds");
  cv_flags.add(cv, "--inner-folds", "inner_folds", "Inner folds (0: folds - 1)");
  cv_flags.add(cv, "--repeats", "repeats", "Repetitions of the outer split");
  cv_flags.add(cv, "--workers", "workers", "Parallel outer folds");
  cv_flags.add(cv, "--out,-o", "out", "JSON-lines results file");
  cv_flags.add_switch(cv, "--untie-c", "untie_c", "true", "Search c1 and c2 independently");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (train->parsed()) {
      ExperimentConfig config = single_point_config();
      config.dataset = train_data;
      train_flags.apply(config);
      const TrainConfig tc = single_train_config(config);
      const LabeledDataset ds = load_experiment_dataset(config);
      const Model model = fit_frlstsvm(ds, tc);
      save_model(model, train_out);
      const auto& summary = std::visit([](const auto& m) -> const TrainingSummary& { return m.summary; }, model);
      out << "trained " << to_string(tc.kernel.type) << " model on " << ds.rows() << " rows ("
          << summary.minority_count << " minority, " << summary.majority_kept << "/" << summary.majority_count
          << " majority kept); wrote " << train_out << '\n';
    } else if (pred->parsed()) {
      const Model model = load_model(pred_model);
      const Matrix x = load_feature_csv(pred_data, !pred_no_header, pred_skip);
      const auto preds = predict(model, x);
      std::ostringstream os;
      os << "row,label,dist1,dist2\n";
      for (std::size_t i = 0; i < preds.size(); ++i) {
        os << i << ',' << preds[i].label << ',' << fmt(preds[i].dist1) << ',' << fmt(preds[i].dist2) << '\n';
      }
      emit(pred_out, os.str(), out);
    } else if (eval->parsed()) {
      ExperimentConfig config;
      config.dataset = eval_data;
      eval_flags.apply(config);
      const MetricConvention convention = parse_metric_convention(eval_convention);
      const Model model = load_model(eval_model);
      const LabeledDataset ds = load_experiment_dataset(config);
      const auto cm = confusion(ds.labels(), labels_of(predict(model, ds.features())));
      const MetricReport r = report(cm, convention);
      out << format_report_table(cm, r);
      if (!eval_out.empty()) {
        write_file_atomic(eval_out, metrics_csv_header() + '\n' +
                                        metrics_csv_line(std::filesystem::path(eval_data).stem().string(),
                                                         std::filesystem::path(eval_model).filename().string(),
                                                         r) +
                                        '\n');
      }
    } else if (sub->parsed()) {
      ExperimentConfig config = single_point_config();
      config.dataset = sub_data;
      sub_flags.apply(config);
      const TrainConfig tc = single_train_config(config);
      const LabeledDataset ds = load_experiment_dataset(config);
      const LabeledDataset scaled = ds.scaled(minmax_fit(ds.features()));
      const auto scores = positive_region_scores(scaled.features(), scaled.labels(), kMajority, tc.fuzzy);
      std::vector<bool> kept(scores.scores.size(), false);
      for (const std::size_t i : subsample_majority(scores, tc.tau).kept) kept[i] = true;
      std::ostringstream os;
      os << "row,score,kept\n";
      for (std::size_t i = 0; i < scores.scores.size(); ++i) {
        os << scores.rows[i] << ',' << fmt(scores.scores[i]) << ',' << (kept[i] ? 1 : 0) << '\n';
      }
      emit(sub_out, os.str(), out);
    } else if (cv->parsed()) {
      ExperimentConfig config = cv_config.empty() ? ExperimentConfig{} : parse_config(cv_config);
      if (!cv_data.empty()) config.dataset = cv_data;
      cv_flags.apply(config);
      config.validate();
      const LabeledDataset ds = load_experiment_dataset(config);
      try {
        const CvResult result = run_nested_cv(config, ds);
        if (!config.out.empty()) write_file_atomic(config.out, cv_result_jsonl(result, config));
        out << config.dataset << '\n' << cv_result_table(result);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-12s %9.1f\n", "wall (s)", result.wall_seconds);
        out << buf;
      } catch (const CvAbortedError& e) {
        if (!config.out.empty()) write_file_atomic(config.out, cv_result_jsonl(e.partial(), config));
        throw;
      }
    }
  } catch (const EmptySelectionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace frlstsvm
