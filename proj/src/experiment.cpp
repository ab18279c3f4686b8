#include "frlstsvm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "frlstsvm/random.hpp"
#include "text_util.hpp"

namespace frlstsvm {

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::vector<double> arithmetic_range(double start, double step, double stop) {
  std::vector<double> out;
  for (int i = 0;; ++i) {
    // Rounded to 12 decimals so 0:0.05:1 yields exactly 0.05, 0.1, ...
    const double v = std::round((start + i * step) * 1e12) / 1e12;
    if (v > stop + 1e-12) break;
    out.push_back(v);
    if (i > 100000) throw ConfigError("range '" + std::to_string(start) + ":" + std::to_string(step) + "' too long");
  }
  return out;
}

std::vector<double> powers_of_two(int lo, int hi, int step) {
  std::vector<double> out;
  for (int e = lo; e <= hi; e += step) out.push_back(std::ldexp(1.0, e));
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  const auto v = text::parse_double(text::trim(value));
  if (!v || !std::isfinite(*v)) throw ConfigError("'" + key + "': '" + value + "' is not a real number");
  return *v;
}

std::uint64_t parse_count(const std::string& key, const std::string& raw) {
  const std::string value = text::trim(raw);
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc() || p != value.data() + value.size()) {
    throw ConfigError("'" + key + "': '" + raw + "' is not a non-negative integer");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string v = text::lower(text::trim(raw));
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "': '" + raw + "' is not a boolean");
}

/// Comma-separated reals; an item `a:s:b` expands to a, a+s, ..., b.
std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : text::split(value, ',')) {
    if (item.empty()) throw ConfigError("'" + key + "': empty list item");
    const auto parts = text::split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_real(key, item));
    } else if (parts.size() == 3) {
      const double step = parse_real(key, parts[1]);
      if (!(step > 0.0)) throw ConfigError("'" + key + "': range step must be > 0");
      const auto range = arithmetic_range(parse_real(key, parts[0]), step, parse_real(key, parts[2]));
      out.insert(out.end(), range.begin(), range.end());
    } else {
      throw ConfigError("'" + key + "': '" + item + "' is neither a number nor start:step:stop");
    }
  }
  return out;
}

void require_all(const std::string& key, const std::vector<double>& values, bool (*ok)(double),
                 const char* rule) {
  if (values.empty()) throw ConfigError("'" + key + "': list must not be empty");
  for (const double v : values) {
    if (!ok(v)) throw ConfigError("'" + key + "': value " + std::to_string(v) + " out of range (" + rule + ")");
  }
}

bool is_unit(double v) { return v >= 0.0 && v <= 1.0; }
bool is_positive(double v) { return v > 0.0 && std::isfinite(v); }

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

GridSpec default_grid() {
  GridSpec g;
  g.tau = arithmetic_range(0.0, 0.05, 1.0);
  g.gamma = arithmetic_range(0.1, 0.1, 2.0);
  g.c1 = powers_of_two(-8, 8, 2);
  g.c2 = g.c1;
  g.sigma = powers_of_two(-4, 4, 1);
  return g;
}

ExperimentConfig::ExperimentConfig() {
  // The grid search refits many times; the normal-equation form gives the
  // same planes at a fraction of the cost on large majority classes.
  base.solver = SolverForm::primal;
}

void ExperimentConfig::validate() const {
  if (!format.empty() && format != "csv" && format != "keel") throw ConfigError("'format': expected csv or keel, got '" + format + "'");
  if (folds < 2) throw ConfigError("'folds': must be at least 2");
  if (inner_folds == 1) throw ConfigError("'inner_folds': must be 0 (auto) or at least 2");
  if (effective_inner_folds() < 2) throw ConfigError("'inner_folds': must be at least 2");
  if (repeats < 1) throw ConfigError("'repeats': must be at least 1");
  if (workers < 1) throw ConfigError("'workers': must be at least 1");
  require_all("tau", grid.tau, is_unit, "0 <= tau <= 1");
  require_all("gamma", grid.gamma, is_positive, "gamma > 0");
  require_all("c1", grid.c1, is_positive, "c1 > 0");
  require_all("c2", grid.c2, is_positive, "c2 > 0");
  require_all("sigma", grid.sigma, is_positive, "sigma > 0");
  TrainConfig probe = base;
  probe.tau = grid.tau.front();
  probe.fuzzy.gamma = grid.gamma.front();
  probe.c1 = grid.c1.front();
  probe.c2 = grid.c2.front();
  probe.kernel.sigma = grid.sigma.front();
  probe.validate();
}

void apply_config_entry(ExperimentConfig& c, const std::string& raw_key, const std::string& raw_value) {
  std::string key = text::lower(text::trim(raw_key));
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string value = text::trim(raw_value);

  if (key == "dataset" || key == "data") {
    c.dataset = value;
  } else if (key == "format") {
    c.format = text::lower(value);
    if (c.format != "csv" && c.format != "keel") throw ConfigError("'format': expected csv or keel, got '" + value + "'");
  } else if (key == "positive_label") {
    c.positive_label = value;
  } else if (key == "label_column") {
    c.label_column = value;
  } else if (key == "header") {
    c.csv_header = parse_bool(key, value);
  } else if (key == "tau") {
    c.grid.tau = parse_list(key, value);
    require_all(key, c.grid.tau, is_unit, "0 <= tau <= 1");
  } else if (key == "gamma") {
    c.grid.gamma = parse_list(key, value);
    require_all(key, c.grid.gamma, is_positive, "gamma > 0");
  } else if (key == "c" ) {
    c.grid.c1 = parse_list(key, value);
    c.grid.c2 = c.grid.c1;
    require_all(key, c.grid.c1, is_positive, "c > 0");
  } else if (key == "c1") {
    c.grid.c1 = parse_list(key, value);
    require_all(key, c.grid.c1, is_positive, "c1 > 0");
  } else if (key == "c2") {
    c.grid.c2 = parse_list(key, value);
    require_all(key, c.grid.c2, is_positive, "c2 > 0");
  } else if (key == "sigma") {
    c.grid.sigma = parse_list(key, value);
    require_all(key, c.grid.sigma, is_positive, "sigma > 0");
  } else if (key == "delta") {
    c.base.delta = parse_real(key, value);
    if (c.base.delta < 0.0) throw ConfigError("'delta': must be >= 0");
  } else if (key == "kernel") {
    c.base.kernel.type = parse_kernel_type(value);
  } else if (key == "score_mode") {
    c.base.fuzzy.score_mode = parse_score_mode(value);
  } else if (key == "tnorm") {
    c.base.fuzzy.tnorm = parse_tnorm(value);
  } else if (key == "implicator") {
    c.base.fuzzy.implicator = parse_implicator(value);
  } else if (key == "metric_convention") {
    c.convention = parse_metric_convention(value);
  } else if (key == "solver") {
    c.base.solver = parse_solver_form(value);
  } else if (key == "weights") {
    c.base.weights_enabled = parse_bool(key, value);
  } else if (key == "subsample") {
    c.base.subsample_enabled = parse_bool(key, value);
  } else if (key == "untie_c") {
    c.untie_c = parse_bool(key, value);
  } else if (key == "seed") {
    c.seed = parse_count(key, value);
  } else if (key == "folds") {
    c.folds = parse_count(key, value);
    if (c.folds < 2) throw ConfigError("'folds': must be at least 2");
  } else if (key == "inner_folds") {
    c.inner_folds = parse_count(key, value);
    if (c.inner_folds == 1) throw ConfigError("'inner_folds': must be 0 (auto) or at least 2");
  } else if (key == "repeats") {
    c.repeats = parse_count(key, value);
    if (c.repeats < 1) throw ConfigError("'repeats': must be at least 1");
  } else if (key == "workers") {
    c.workers = parse_count(key, value);
    if (c.workers < 1) throw ConfigError("'workers': must be at least 1");
  } else if (key == "out") {
    c.out = value;
  } else {
    throw ConfigError("unknown configuration key '" + raw_key + "'");
  }
}

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (text::trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      apply_config_entry(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

ExperimentConfig parse_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

LabeledDataset load_experiment_dataset(const ExperimentConfig& config) {
  if (config.dataset.empty()) throw ConfigError("no dataset given");
  std::string format = config.format;
  if (format.empty()) {
    const std::string ext = text::lower(std::filesystem::path(config.dataset).extension().string());
    format = ext == ".csv" ? "csv" : "keel";
  }
  if (format == "keel") return load_keel(config.dataset, config.positive_label);
  CsvOptions opts;
  opts.positive_label = config.positive_label;
  opts.has_header = config.csv_header;
  if (!config.label_column.empty()) {
    const std::string& lc = config.label_column;
    if (std::all_of(lc.begin(), lc.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; })) {
      opts.label_column = static_cast<std::size_t>(std::stoull(lc));
    } else {
      opts.label_column = lc;
    }
  }
  return load_csv(config.dataset, opts);
}

// ---------------------------------------------------------------------------
// Grid

std::vector<GridPoint> enumerate_grid(const ExperimentConfig& config) {
  const TrainConfig& b = config.base;
  const auto taus = b.subsample_enabled ? sorted_unique(config.grid.tau) : std::vector<double>{0.0};
  const bool uses_gamma = b.subsample_enabled || b.weights_enabled;
  const auto gammas = uses_gamma ? sorted_unique(config.grid.gamma)
                                 : std::vector<double>{sorted_unique(config.grid.gamma).front()};
  const auto c1s = sorted_unique(config.grid.c1);
  const auto c2s = config.untie_c ? sorted_unique(config.grid.c2) : std::vector<double>{};
  const auto sigmas = b.kernel.type == KernelType::gaussian ? sorted_unique(config.grid.sigma)
                                                            : std::vector<double>{sorted_unique(config.grid.sigma).front()};
  std::vector<GridPoint> out;
  for (const double tau : taus) {
    for (const double gamma : gammas) {
      for (const double c1 : c1s) {
        const std::vector<double> c2_values = config.untie_c ? c2s : std::vector<double>{c1};
        for (const double c2 : c2_values) {
          for (const double sigma : sigmas) out.push_back({tau, gamma, c1, c2, sigma});
        }
      }
    }
  }
  return out;
}

TrainConfig train_config_for(const ExperimentConfig& config, const GridPoint& p) {
  TrainConfig t = config.base;
  t.tau = p.tau;
  t.fuzzy.gamma = p.gamma;
  t.c1 = p.c1;
  t.c2 = p.c2;
  t.kernel.sigma = p.sigma;
  return t;
}

namespace {

double validation_gmean(const Model& model, const LabeledDataset& validation, MetricConvention convention) {
  const auto preds = predict(model, validation.features());
  std::vector<int> labels(preds.size());
  std::transform(preds.begin(), preds.end(), labels.begin(), [](const Prediction& p) { return p.label; });
  return report(confusion(validation.labels(), labels), convention).gmean;
}

}  // namespace

std::vector<std::optional<double>> evaluate_grid(const LabeledDataset& train, const LabeledDataset& validation,
                                                 const ExperimentConfig& config,
                                                 const std::vector<GridPoint>& points) {
  std::vector<std::optional<double>> out(points.size());
  const TrainConfig& base = config.base;

  // gamma -> tau -> point indices
  std::map<double, std::map<double, std::vector<std::size_t>>> groups;
  for (std::size_t i = 0; i < points.size(); ++i) groups[points[i].gamma][points[i].tau].push_back(i);

  const ScalingParams scaling = minmax_fit(train.features());
  const LabeledDataset scaled = train.scaled(scaling);
  const ClassSplit split = split_by_class(scaled);
  const bool linear = base.kernel.type == KernelType::linear;

  for (const auto& [gamma, by_tau] : groups) {
    FuzzyParams fuzzy = base.fuzzy;
    fuzzy.gamma = gamma;
    std::optional<Matrix> majority_similarity;
    if ((base.subsample_enabled && fuzzy.score_mode == ScoreMode::density) || base.weights_enabled) {
      majority_similarity = indiscernibility_matrix(split.majority, fuzzy).values;
    }
    PositiveRegionScores scores;
    if (base.subsample_enabled) {
      if (fuzzy.score_mode == ScoreMode::density) {
        scores.scores = density_scores(*majority_similarity);
      } else {
        scores = positive_region_scores(scaled.features(), scaled.labels(), kMajority, fuzzy);
      }
    }
    const WeightVector minority_weights =
        base.weights_enabled
            ? class_weights(split.minority, fuzzy, ClassTag::minority)
            : WeightVector{std::vector<double>(static_cast<std::size_t>(split.minority.rows()), 1.0),
                           ClassTag::minority};

    for (const auto& [tau, indices] : by_tau) {
      std::vector<std::size_t> kept;
      if (base.subsample_enabled) {
        try {
          kept = subsample_majority(scores, tau).kept;
        } catch (const EmptySelectionError&) {
          continue;
        }
      } else {
        kept.resize(split.majority_rows.size());
        for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;
      }
      Matrix majority_kept(static_cast<Eigen::Index>(kept.size()), split.majority.cols());
      for (std::size_t i = 0; i < kept.size(); ++i) {
        majority_kept.row(static_cast<Eigen::Index>(i)) = split.majority.row(static_cast<Eigen::Index>(kept[i]));
      }
      const WeightVector majority_weights =
          base.weights_enabled ? weights_from_similarity(*majority_similarity, kept, ClassTag::majority)
                               : WeightVector{std::vector<double>(kept.size(), 1.0), ClassTag::majority};

      std::optional<detail::WeightedNormalEquations> normal;
      if (linear && base.solver == SolverForm::primal) {
        normal.emplace(split.minority, majority_kept, minority_weights.as_vector(), majority_weights.as_vector());
      }
      for (const std::size_t idx : indices) {
        const GridPoint& p = points[idx];
        try {
          Model model;
          if (normal) {
            const auto [u1, u2] = normal->solve(p.c1, p.c2, base.delta);
            LinearModel lm = detail::planes_from_solution(u1, u2);
            lm.scaling = scaling;
            model = std::move(lm);
          } else if (linear) {
            LinearModel lm = fit_linear(split.minority, majority_kept, minority_weights, majority_weights, p.c1,
                                        p.c2, base.delta, base.solver);
            lm.scaling = scaling;
            model = std::move(lm);
          } else {
            KernelModel km = fit_kernel(split.minority, majority_kept, minority_weights, majority_weights,
                                        train_config_for(config, p));
            km.scaling = scaling;
            model = std::move(km);
          }
          out[idx] = validation_gmean(model, validation, config.convention);
        } catch (const Error&) {
          out[idx].reset();
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nested cross-validation

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (const double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  return s;
}

namespace {

struct FoldFailure : Error {
  using Error::Error;
};

FoldRecord run_outer_fold(const ExperimentConfig& config, const LabeledDataset& ds, const FoldPlan& plan,
                          std::size_t repeat, std::size_t fold, const std::vector<GridPoint>& points) {
  const auto train_rows = plan.train_rows(fold);
  const auto test_rows = plan.test_rows(fold);
  const LabeledDataset train = ds.subset(train_rows);
  const LabeledDataset test = ds.subset(test_rows);

  const FoldPlan inner = stratified_kfold(train.labels(), config.effective_inner_folds(),
                                          derive_seed(config.seed + repeat, fold));
  std::vector<double> sums(points.size(), 0.0);
  std::vector<bool> failed(points.size(), false);
  for (std::size_t g = 0; g < inner.k; ++g) {
    const auto itrain = inner.train_rows(g);
    const auto ival = inner.test_rows(g);
    const auto scores = evaluate_grid(train.subset(itrain), train.subset(ival), config, points);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (scores[i]) {
        sums[i] += *scores[i];
      } else {
        failed[i] = true;
      }
    }
  }

  FoldRecord rec;
  rec.repeat = repeat;
  rec.fold = fold;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (failed[i]) {
      ++rec.skipped_points;
      continue;
    }
    if (!best || sums[i] > sums[*best]) best = i;
  }
  if (!best) {
    throw FoldFailure("repeat " + std::to_string(repeat) + " fold " + std::to_string(fold) +
                      ": every grid point failed");
  }
  rec.best = points[*best];
  rec.inner_gmean = sums[*best] / static_cast<double>(inner.k);

  const Model model = fit_frlstsvm(train, train_config_for(config, rec.best));
  rec.majority_kept = std::visit([](const auto& m) { return m.summary.majority_kept; }, model);
  const auto preds = predict(model, test.features());
  std::vector<int> labels(preds.size());
  std::transform(preds.begin(), preds.end(), labels.begin(), [](const Prediction& p) { return p.label; });
  rec.confusion = confusion(test.labels(), labels);
  rec.metrics = report(rec.confusion, config.convention);
  return rec;
}

void aggregate(CvResult& result) {
  std::vector<double> acc, sen, spe, gm;
  for (const auto& f : result.folds) {
    acc.push_back(f.metrics.accuracy);
    sen.push_back(f.metrics.sensitivity);
    spe.push_back(f.metrics.specificity);
    gm.push_back(f.metrics.gmean);
  }
  result.accuracy = summarize(acc);
  result.sensitivity = summarize(sen);
  result.specificity = summarize(spe);
  result.gmean = summarize(gm);
}

}  // namespace

CvResult run_nested_cv(const ExperimentConfig& config, const LabeledDataset& ds) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto points = enumerate_grid(config);

  std::vector<FoldPlan> plans;
  for (std::size_t r = 0; r < config.repeats; ++r) plans.push_back(stratified_kfold(ds, config.folds, config.seed + r));

  const std::size_t tasks = config.repeats * config.folds;
  std::vector<std::optional<FoldRecord>> records(tasks);
  std::vector<std::string> errors(tasks);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};

  const auto worker = [&] {
    while (!abort.load()) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) break;
      const std::size_t r = t / config.folds;
      const std::size_t f = t % config.folds;
      try {
        records[t] = run_outer_fold(config, ds, plans[r], r, f, points);
      } catch (const std::exception& e) {
        errors[t] = e.what();
        abort.store(true);
      }
    }
  };
  const std::size_t n_workers = std::min(config.workers, tasks);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  CvResult result;
  result.dataset = config.dataset;
  result.convention = config.convention;
  for (auto& rec : records) {
    if (rec) result.folds.push_back(std::move(*rec));
  }
  aggregate(result);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (std::size_t t = 0; t < tasks; ++t) {
    if (!errors[t].empty()) throw CvAbortedError("cross-validation aborted: " + errors[t], std::move(result));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Reporting

std::string describe_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "kernel=" << to_string(c.base.kernel.type) << ";score=" << to_string(c.base.fuzzy.score_mode)
     << ";tnorm=" << to_string(c.base.fuzzy.tnorm) << ";implicator=" << to_string(c.base.fuzzy.implicator)
     << ";subsample=" << (c.base.subsample_enabled ? 1 : 0) << ";weights=" << (c.base.weights_enabled ? 1 : 0)
     << ";solver=" << to_string(c.base.solver) << ";folds=" << c.folds << ";repeats=" << c.repeats
     << ";seed=" << c.seed;
  return os.str();
}

std::string cv_result_jsonl(const CvResult& result, const ExperimentConfig& config) {
  std::string out;
  for (const auto& f : result.folds) {
    nlohmann::ordered_json j;
    j["type"] = "fold";
    j["repeat"] = f.repeat;
    j["fold"] = f.fold;
    j["tau"] = f.best.tau;
    j["gamma"] = f.best.gamma;
    j["c1"] = f.best.c1;
    j["c2"] = f.best.c2;
    j["sigma"] = f.best.sigma;
    j["inner_gmean"] = f.inner_gmean;
    j["skipped_points"] = f.skipped_points;
    j["majority_kept"] = f.majority_kept;
    j["tp"] = f.confusion.tp;
    j["fn"] = f.confusion.fn;
    j["fp"] = f.confusion.fp;
    j["tn"] = f.confusion.tn;
    j["acc"] = f.metrics.accuracy;
    j["sen"] = f.metrics.sensitivity;
    j["spe"] = f.metrics.specificity;
    j["gmean"] = f.metrics.gmean;
    out += j.dump() + '\n';
  }
  nlohmann::ordered_json s;
  s["type"] = "summary";
  s["dataset"] = result.dataset;
  s["config"] = describe_config(config);
  s["convention"] = std::string(to_string(result.convention));
  s["folds"] = result.folds.size();
  s["acc_mean"] = result.accuracy.mean;
  s["acc_std"] = result.accuracy.stddev;
  s["sen_mean"] = result.sensitivity.mean;
  s["sen_std"] = result.sensitivity.stddev;
  s["spe_mean"] = result.specificity.mean;
  s["spe_std"] = result.specificity.stddev;
  s["gmean_mean"] = result.gmean.mean;
  s["gmean_std"] = result.gmean.stddev;
  out += s.dump() + '\n';
  return out;
}

std::string cv_result_table(const CvResult& r) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %9s %9s\n", "metric", "mean(%)", "std(%)");
  os << buf;
  const auto row = [&](const char* name, const MetricSummary& m) {
    std::snprintf(buf, sizeof buf, "%-12s %9.2f %9.2f\n", name, 100.0 * m.mean, 100.0 * m.stddev);
    os << buf;
  };
  row("accuracy", r.accuracy);
  row("sensitivity", r.sensitivity);
  row("specificity", r.specificity);
  row("g-mean", r.gmean);
  std::snprintf(buf, sizeof buf, "%-12s %9zu\n%-12s %9s\n", "outer folds", r.folds.size(), "convention",
                std::string(to_string(r.convention)).c_str());
  os << buf;
  return os.str();
}

}  // namespace frlstsvm
