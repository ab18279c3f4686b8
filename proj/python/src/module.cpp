#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "frlstsvm/classifier.hpp"
#include "frlstsvm/dataset.hpp"
#include "frlstsvm/error.hpp"
#include "frlstsvm/experiment.hpp"
#include "frlstsvm/fuzzy_rough.hpp"
#include "frlstsvm/metrics.hpp"
#include "frlstsvm/model_io.hpp"

namespace py = pybind11;
using namespace frlstsvm;

namespace {

// Model is a variant; Python sees one opaque class.
struct PyModel {
  Model model;
};

py::tuple predict_arrays(const PyModel& m, const Matrix& x) {
  const auto preds = predict(m.model, x);
  const auto n = static_cast<py::ssize_t>(preds.size());
  py::array_t<int> labels(n);
  py::array_t<double> d1(n), d2(n);
  auto l = labels.mutable_unchecked<1>();
  auto a = d1.mutable_unchecked<1>();
  auto b = d2.mutable_unchecked<1>();
  for (py::ssize_t i = 0; i < n; ++i) {
    l(i) = preds[static_cast<std::size_t>(i)].label;
    a(i) = preds[static_cast<std::size_t>(i)].dist1;
    b(i) = preds[static_cast<std::size_t>(i)].dist2;
  }
  return py::make_tuple(labels, d1, d2);
}

const TrainingSummary& summary_of(const Model& m) {
  return std::visit([](const auto& v) -> const TrainingSummary& { return v.summary; }, m);
}

}  // namespace

PYBIND11_MODULE(_frlstsvm, m) {
  m.doc() = "Fuzzy-rough weighted least-squares twin SVM for imbalanced binary data";
  m.attr("MINORITY") = kMinority;
  m.attr("MAJORITY") = kMajority;

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<DataError>(m, "DataError", error.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
  auto config_error = py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<EmptySelectionError>(m, "EmptySelectionError", config_error.ptr());

  py::enum_<KernelType>(m, "KernelType").value("linear", KernelType::linear).value("gaussian", KernelType::gaussian);
  py::enum_<SolverForm>(m, "SolverForm").value("dual", SolverForm::dual).value("primal", SolverForm::primal);
  py::enum_<TNorm>(m, "TNorm")
      .value("minimum", TNorm::minimum)
      .value("product", TNorm::product)
      .value("lukasiewicz", TNorm::lukasiewicz);
  py::enum_<Implicator>(m, "Implicator")
      .value("lukasiewicz", Implicator::lukasiewicz)
      .value("kleene_dienes", Implicator::kleene_dienes);
  py::enum_<ScoreMode>(m, "ScoreMode").value("density", ScoreMode::density).value("lower_approx", ScoreMode::lower_approx);
  py::enum_<MetricConvention>(m, "MetricConvention")
      .value("standard", MetricConvention::standard)
      .value("paper_literal", MetricConvention::paper_literal);

  py::class_<FuzzyParams>(m, "FuzzyParams")
      .def(py::init<>())
      .def_readwrite("gamma", &FuzzyParams::gamma)
      .def_readwrite("tnorm", &FuzzyParams::tnorm)
      .def_readwrite("implicator", &FuzzyParams::implicator)
      .def_readwrite("score_mode", &FuzzyParams::score_mode)
      .def("validate", &FuzzyParams::validate);

  py::class_<KernelSpec>(m, "KernelSpec")
      .def(py::init<>())
      .def_readwrite("type", &KernelSpec::type)
      .def_readwrite("sigma", &KernelSpec::sigma);

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("c1", &TrainConfig::c1)
      .def_readwrite("c2", &TrainConfig::c2)
      .def_readwrite("delta", &TrainConfig::delta)
      .def_readwrite("tau", &TrainConfig::tau)
      .def_readwrite("fuzzy", &TrainConfig::fuzzy)
      .def_readwrite("kernel", &TrainConfig::kernel)
      .def_readwrite("subsample_enabled", &TrainConfig::subsample_enabled)
      .def_readwrite("weights_enabled", &TrainConfig::weights_enabled)
      .def_readwrite("solver", &TrainConfig::solver)
      .def("validate", &TrainConfig::validate);

  py::class_<LabeledDataset>(m, "Dataset")
      .def(py::init([](const Matrix& x, const std::vector<int>& y) { return LabeledDataset(x, y); }), py::arg("x"),
           py::arg("y"), "Labels must be +1 (minority) or -1 (majority).")
      .def_property_readonly("features", &LabeledDataset::features)
      .def_property_readonly("labels", &LabeledDataset::labels)
      .def_property_readonly("attribute_names", &LabeledDataset::attribute_names)
      .def_property_readonly("rows", &LabeledDataset::rows)
      .def_property_readonly("cols", &LabeledDataset::cols)
      .def_property_readonly("minority_count", &LabeledDataset::minority_count)
      .def_property_readonly("majority_count", &LabeledDataset::majority_count)
      .def("__len__", &LabeledDataset::rows);

  m.def("load_keel", &load_keel, py::arg("path"), py::arg("positive_label") = "positive");
  m.def(
      "load_csv",
      [](const std::filesystem::path& path, const std::string& positive_label, bool header) {
        CsvOptions opts;
        opts.positive_label = positive_label;
        opts.has_header = header;
        return load_csv(path, opts);
      },
      py::arg("path"), py::arg("positive_label"), py::arg("header") = true, "The label is the last column.");
  m.def("imbalance_ratio", &imbalance_ratio);

  py::class_<PyModel>(m, "Model")
      .def_property_readonly("kernel",
                             [](const PyModel& p) {
                               return std::holds_alternative<LinearModel>(p.model) ? KernelType::linear
                                                                                   : KernelType::gaussian;
                             })
      .def_property_readonly("dimension", [](const PyModel& p) { return model_dimension(p.model); })
      .def_property_readonly("majority_kept", [](const PyModel& p) { return summary_of(p.model).majority_kept; })
      .def_property_readonly("majority_count", [](const PyModel& p) { return summary_of(p.model).majority_count; })
      .def_property_readonly("minority_count", [](const PyModel& p) { return summary_of(p.model).minority_count; })
      .def("predict", &predict_arrays, py::arg("x"), "Returns (labels, dist1, dist2) for raw feature rows.")
      .def("save", [](const PyModel& p, const std::filesystem::path& path) { save_model(p.model, path); })
      .def("dumps", [](const PyModel& p) { return serialize_model(p.model); })
      .def_static("load", [](const std::filesystem::path& path) { return PyModel{load_model(path)}; })
      .def_static("loads", [](const std::string& text) { return PyModel{deserialize_model(text)}; });

  m.def(
      "fit", [](const LabeledDataset& ds, const TrainConfig& config) { return PyModel{fit_frlstsvm(ds, config)}; },
      py::arg("dataset"), py::arg("config") = TrainConfig{}, py::call_guard<py::gil_scoped_release>());

  py::class_<PositiveRegionScores>(m, "PositiveRegionScores")
      .def_readonly("scores", &PositiveRegionScores::scores)
      .def_readonly("rows", &PositiveRegionScores::rows)
      .def_readonly("mode", &PositiveRegionScores::mode);
  py::class_<SubsampleResult>(m, "SubsampleResult")
      .def_readonly("kept", &SubsampleResult::kept)
      .def_readonly("removed", &SubsampleResult::removed)
      .def_readonly("tau", &SubsampleResult::tau);
  m.def(
      "positive_region_scores",
      [](const Matrix& x, const std::vector<int>& labels, int target, const FuzzyParams& params) {
        return positive_region_scores(x, labels, target, params);
      },
      py::arg("x"), py::arg("labels"), py::arg("target_class") = kMajority, py::arg("params") = FuzzyParams{},
      "Scores rows of one class; x should already be scaled to [0, 1].");
  m.def("subsample_majority", &subsample_majority, py::arg("scores"), py::arg("tau"));

  py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
      .def(py::init([](std::size_t tp, std::size_t fn, std::size_t fp, std::size_t tn) {
             return ConfusionMatrix{tp, fn, fp, tn};
           }),
           py::arg("tp"), py::arg("fn"), py::arg("fp"), py::arg("tn"))
      .def_readonly("tp", &ConfusionMatrix::tp)
      .def_readonly("fn", &ConfusionMatrix::fn)
      .def_readonly("fp", &ConfusionMatrix::fp)
      .def_readonly("tn", &ConfusionMatrix::tn)
      .def("total", &ConfusionMatrix::total);
  py::class_<MetricReport>(m, "MetricReport")
      .def_readonly("sensitivity", &MetricReport::sensitivity)
      .def_readonly("specificity", &MetricReport::specificity)
      .def_readonly("accuracy", &MetricReport::accuracy)
      .def_readonly("gmean", &MetricReport::gmean)
      .def_readonly("degenerate", &MetricReport::degenerate);
  m.def(
      "confusion",
      [](const std::vector<int>& y_true, const std::vector<int>& y_pred) { return confusion(y_true, y_pred); },
      py::arg("y_true"), py::arg("y_pred"));
  m.def("report", &report, py::arg("confusion"), py::arg("convention") = MetricConvention::standard);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def("set", &apply_config_entry, py::arg("key"), py::arg("value"), "Applies one `key = value` setting.")
      .def("validate", &ExperimentConfig::validate)
      .def("describe", &describe_config)
      .def_readwrite("dataset", &ExperimentConfig::dataset)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("folds", &ExperimentConfig::folds)
      .def_readwrite("repeats", &ExperimentConfig::repeats)
      .def_readwrite("workers", &ExperimentConfig::workers)
      .def_readwrite("base", &ExperimentConfig::base);
  m.def("parse_config", [](const std::string& text) { return parse_config_text(text); }, py::arg("text"));

  py::class_<MetricSummary>(m, "MetricSummary")
      .def_readonly("mean", &MetricSummary::mean)
      .def_readonly("std", &MetricSummary::stddev);
  py::class_<CvResult>(m, "CvResult")
      .def_readonly("accuracy", &CvResult::accuracy)
      .def_readonly("sensitivity", &CvResult::sensitivity)
      .def_readonly("specificity", &CvResult::specificity)
      .def_readonly("gmean", &CvResult::gmean)
      .def_readonly("wall_seconds", &CvResult::wall_seconds)
      .def_property_readonly("fold_count", [](const CvResult& r) { return r.folds.size(); })
      .def("table", &cv_result_table);
  m.def("run_cv", &run_nested_cv, py::arg("config"), py::arg("dataset"), py::call_guard<py::gil_scoped_release>());
  m.def("cv_result_jsonl", &cv_result_jsonl, py::arg("result"), py::arg("config"));
}
