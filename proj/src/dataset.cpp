#include "frlstsvm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>

#include "frlstsvm/random.hpp"
#include "text_util.hpp"

namespace frlstsvm {

namespace {

std::mutex& warning_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& warning_handler() {
  static WarningHandler handler = [](const std::string& msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return handler;
}

}  // namespace

void set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(warning_mutex());
  warning_handler() = std::move(handler);
}

void warn(const std::string& message) {
  std::lock_guard lock(warning_mutex());
  if (warning_handler()) warning_handler()(message);
}

// ---------------------------------------------------------------------------
// LabeledDataset

LabeledDataset::LabeledDataset(Matrix features, std::vector<int> labels,
                               std::vector<std::string> attribute_names)
    : features_(std::move(features)), labels_(std::move(labels)), names_(std::move(attribute_names)) {
  const auto m = labels_.size();
  if (static_cast<std::size_t>(features_.rows()) != m) {
    throw DimensionError("dataset: " + std::to_string(features_.rows()) + " feature rows but " +
                         std::to_string(m) + " labels");
  }
  if (m < 2) throw DataError("dataset: at least 2 rows are required");
  if (features_.cols() < 1) throw DataError("dataset: at least 1 attribute is required");
  if (!features_.allFinite()) throw DataError("dataset: every feature value must be finite");
  for (const int y : labels_) {
    if (y != kMinority && y != kMajority) throw DataError("dataset: labels must be +1 or -1");
  }
  if (names_.empty()) {
    for (Eigen::Index j = 0; j < features_.cols(); ++j) names_.push_back("a" + std::to_string(j));
  }
  if (names_.size() != cols()) throw DimensionError("dataset: attribute name count mismatch");
  const auto pos = minority_count();
  if (pos == 0 || pos == m) throw DataError("dataset: both classes (+1 and -1) must be present");
  if (pos > m - pos) {
    warn("class +1 has " + std::to_string(pos) + " rows, more than class -1 (" +
         std::to_string(m - pos) + "); +1 is expected to be the minority");
  }
}

LabeledDataset::LabeledDataset(Unchecked, Matrix features, std::vector<int> labels,
                               std::vector<std::string> names, std::optional<ScalingParams> scaling)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      names_(std::move(names)),
      scaling_(std::move(scaling)) {}

std::size_t LabeledDataset::minority_count() const noexcept {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), kMinority));
}

std::size_t LabeledDataset::majority_count() const noexcept { return rows() - minority_count(); }

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> rows) const {
  Matrix x(static_cast<Eigen::Index>(rows.size()), features_.cols());
  std::vector<int> y;
  y.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= labels_.size()) throw DimensionError("dataset subset: row index out of range");
    x.row(static_cast<Eigen::Index>(i)) = features_.row(static_cast<Eigen::Index>(rows[i]));
    y.push_back(labels_[rows[i]]);
  }
  return LabeledDataset(Unchecked{}, std::move(x), std::move(y), names_, scaling_);
}

LabeledDataset LabeledDataset::scaled(const ScalingParams& params) const {
  return LabeledDataset(Unchecked{}, minmax_apply(params, features_), labels_, names_, params);
}

bool LabeledDataset::operator==(const LabeledDataset& other) const {
  return features_.rows() == other.features_.rows() && features_.cols() == other.features_.cols() &&
         features_ == other.features_ && labels_ == other.labels_ && names_ == other.names_ &&
         scaling_ == other.scaling_;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

CsvTable read_csv_table(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) text::strip_bom(line);
    if (text::trim(line).empty()) continue;
    auto cells = text::split(line, ',');
    if (header_pending) {
      table.header = std::move(cells);
      width = table.header.size();
      header_pending = false;
      continue;
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                           std::to_string(width) + " columns, found " + std::to_string(cells.size()),
                       line_no);
    }
    table.rows.push_back(std::move(cells));
    table.line_numbers.push_back(line_no);
  }
  return table;
}

double parse_cell(const std::string& cell, const std::filesystem::path& path, std::size_t line,
                  std::size_t column, const std::string& column_name) {
  const auto value = text::parse_double(cell);
  if (!value || !std::isfinite(*value)) {
    throw ParseError(path.string() + ": non-numeric value '" + cell + "' at row " +
                         std::to_string(line) + ", column " + std::to_string(column + 1) +
                         (column_name.empty() ? "" : " (" + column_name + ")"),
                     line, column + 1);
  }
  return *value;
}

}  // namespace

LabeledDataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  const CsvTable table = read_csv_table(path, options.has_header);
  if (table.rows.empty()) throw ParseError(path.string() + ": no data rows");
  const std::size_t width = table.rows.front().size();

  std::size_t label_col = width - 1;
  if (const auto* name = std::get_if<std::string>(&options.label_column)) {
    const auto it = std::find(table.header.begin(), table.header.end(), *name);
    if (it == table.header.end()) {
      throw ParseError(path.string() + ": label column '" + *name + "' not found");
    }
    label_col = static_cast<std::size_t>(it - table.header.begin());
  } else if (const auto* index = std::get_if<std::size_t>(&options.label_column)) {
    if (*index >= width) {
      throw ParseError(path.string() + ": label column index " + std::to_string(*index) +
                       " out of range (" + std::to_string(width) + " columns)");
    }
    label_col = *index;
  }
  if (width < 2) throw ParseError(path.string() + ": need at least one feature column and a label");

  const auto m = static_cast<Eigen::Index>(table.rows.size());
  Matrix x(m, static_cast<Eigen::Index>(width - 1));
  std::vector<int> y;
  y.reserve(table.rows.size());
  std::vector<std::string> names;
  for (std::size_t j = 0; j < width; ++j) {
    if (j == label_col) continue;
    names.push_back(table.header.empty() ? "a" + std::to_string(names.size()) : table.header[j]);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& cells = table.rows[static_cast<std::size_t>(i)];
    const auto line = table.line_numbers[static_cast<std::size_t>(i)];
    Eigen::Index out = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (j == label_col) continue;
      x(i, out++) = parse_cell(cells[j], path, line, j, table.header.empty() ? "" : table.header[j]);
    }
    y.push_back(cells[label_col] == options.positive_label ? kMinority : kMajority);
  }
  return LabeledDataset(std::move(x), std::move(y), std::move(names));
}

Matrix load_feature_csv(const std::filesystem::path& path, bool has_header,
                        std::optional<std::size_t> skip_column) {
  const CsvTable table = read_csv_table(path, has_header);
  if (table.rows.empty()) throw ParseError(path.string() + ": no data rows");
  const std::size_t width = table.rows.front().size();
  const std::size_t out_width = width - (skip_column && *skip_column < width ? 1 : 0);
  Matrix x(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(out_width));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    Eigen::Index out = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (skip_column && j == *skip_column) continue;
      x(static_cast<Eigen::Index>(i), out++) =
          parse_cell(table.rows[i][j], path, table.line_numbers[i], j,
                     table.header.empty() ? "" : table.header[j]);
    }
  }
  return x;
}

void write_csv(const LabeledDataset& ds, const std::filesystem::path& path,
               const std::string& positive_label, const std::string& negative_label) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << std::setprecision(17);
  for (const auto& name : ds.attribute_names()) out << name << ',';
  out << "class\n";
  const Matrix& x = ds.features();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) out << x(i, j) << ',';
    out << (ds.labels()[static_cast<std::size_t>(i)] == kMinority ? positive_label : negative_label)
        << '\n';
  }
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// KEEL

namespace {

struct KeelAttribute {
  std::string name;
  bool nominal = false;
};

}  // namespace

LabeledDataset load_keel(const std::filesystem::path& path, const std::string& positive_label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");

  const auto where = [&](std::size_t line) { return path.string() + ":" + std::to_string(line) + ": "; };

  std::vector<KeelAttribute> attributes;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  bool saw_data = false;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) text::strip_bom(line);
    const std::string trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.starts_with('%')) continue;

    if (saw_data) {
      rows.push_back(text::split(trimmed, ','));
      row_lines.push_back(line_no);
      continue;
    }
    if (trimmed.front() != '@') throw ParseError(where(line_no) + "expected a header keyword", line_no);

    const auto space = trimmed.find_first_of(" \t");
    const std::string keyword = text::lower(trimmed.substr(0, space));
    const std::string rest = space == std::string::npos ? "" : text::trim(trimmed.substr(space));

    if (keyword == "@relation") {
      continue;
    } else if (keyword == "@attribute") {
      const auto name_end = rest.find_first_of(" \t{[");
      if (rest.empty() || name_end == 0) {
        throw ParseError(where(line_no) + "malformed @attribute line", line_no);
      }
      KeelAttribute attr;
      attr.name = rest.substr(0, name_end);
      const std::string spec = name_end == std::string::npos ? "" : text::trim(rest.substr(name_end));
      if (spec.starts_with('{')) {
        if (!spec.ends_with('}')) throw ParseError(where(line_no) + "unterminated nominal value list", line_no);
        attr.nominal = true;
      } else {
        const std::string type = text::lower(spec.substr(0, spec.find_first_of(" \t[")));
        if (type != "real" && type != "integer" && type != "numeric") {
          throw ParseError(where(line_no) + "unknown attribute type '" + type + "'", line_no);
        }
        const auto bracket = spec.find('[');
        if (bracket != std::string::npos && spec.find(']', bracket) == std::string::npos) {
          throw ParseError(where(line_no) + "unterminated attribute range", line_no);
        }
      }
      attributes.push_back(std::move(attr));
    } else if (keyword == "@inputs" || keyword == "@input") {
      for (auto& name : text::split(rest, ',')) inputs.push_back(std::move(name));
    } else if (keyword == "@outputs" || keyword == "@output") {
      for (auto& name : text::split(rest, ',')) outputs.push_back(std::move(name));
    } else if (keyword == "@data") {
      saw_data = true;
    } else {
      throw ParseError(where(line_no) + "unknown header keyword '" + keyword + "'", line_no);
    }
  }

  if (!saw_data) throw ParseError(path.string() + ": missing @data section");
  if (attributes.size() < 2) throw ParseError(path.string() + ": need at least one input and one output attribute");

  const auto index_of = [&](const std::string& name) -> std::size_t {
    for (std::size_t j = 0; j < attributes.size(); ++j) {
      if (attributes[j].name == name) return j;
    }
    throw ParseError(path.string() + ": unknown attribute '" + name + "' in @inputs/@outputs");
  };

  if (outputs.size() > 1) throw ParseError(path.string() + ": more than one output attribute is not supported");
  const std::size_t output = outputs.empty() ? attributes.size() - 1 : index_of(outputs.front());
  std::vector<std::size_t> input_cols;
  if (inputs.empty()) {
    for (std::size_t j = 0; j < attributes.size(); ++j) {
      if (j != output) input_cols.push_back(j);
    }
  } else {
    for (const auto& name : inputs) input_cols.push_back(index_of(name));
  }
  for (const auto j : input_cols) {
    if (attributes[j].nominal) {
      throw ParseError(path.string() + ": nominal input attribute '" + attributes[j].name +
                       "' is not supported");
    }
  }
  if (rows.empty()) throw ParseError(path.string() + ": @data section is empty");

  Matrix x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(input_cols.size()));
  std::vector<int> y;
  y.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& cells = rows[i];
    if (cells.size() != attributes.size()) {
      throw ParseError(where(row_lines[i]) + "expected " + std::to_string(attributes.size()) +
                           " values, found " + std::to_string(cells.size()),
                       row_lines[i]);
    }
    for (std::size_t c = 0; c < input_cols.size(); ++c) {
      const auto j = input_cols[c];
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          parse_cell(cells[j], path, row_lines[i], j, attributes[j].name);
    }
    y.push_back(cells[output] == positive_label ? kMinority : kMajority);
  }
  std::vector<std::string> names;
  for (const auto j : input_cols) names.push_back(attributes[j].name);
  return LabeledDataset(std::move(x), std::move(y), std::move(names));
}

// ---------------------------------------------------------------------------
// Scaling

ScalingParams minmax_fit(const Matrix& x) {
  if (x.rows() < 1) throw DataError("minmax_fit: no rows");
  ScalingParams params;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double lo = x.col(j).minCoeff();
    const double hi = x.col(j).maxCoeff();
    params.minimum.push_back(lo);
    params.range.push_back(hi > lo ? hi - lo : 1.0);
  }
  return params;
}

namespace {

double scale_value(double v, double lo, double range) {
  return std::clamp((v - lo) / range, 0.0, 1.0);
}

}  // namespace

Matrix minmax_apply(const ScalingParams& params, const Matrix& x) {
  if (static_cast<std::size_t>(x.cols()) != params.size()) {
    throw DimensionError("minmax_apply: expected " + std::to_string(params.size()) + " columns, got " +
                         std::to_string(x.cols()));
  }
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      out(i, j) = scale_value(x(i, j), params.minimum[uj], params.range[uj]);
    }
  }
  return out;
}

Vector minmax_apply(const ScalingParams& params, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != params.size()) {
    throw DimensionError("minmax_apply: expected " + std::to_string(params.size()) + " values, got " +
                         std::to_string(x.size()));
  }
  Vector out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    out(j) = scale_value(x(j), params.minimum[uj], params.range[uj]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Splitting and folds

ClassSplit split_by_class(const LabeledDataset& ds) {
  ClassSplit split;
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    (ds.labels()[i] == kMinority ? split.minority_rows : split.majority_rows).push_back(i);
  }
  if (split.minority_rows.empty() || split.majority_rows.empty()) {
    throw DataError("split_by_class: both classes must be present");
  }
  const auto gather = [&](const std::vector<std::size_t>& rows) {
    Matrix m(static_cast<Eigen::Index>(rows.size()), ds.features().cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      m.row(static_cast<Eigen::Index>(i)) = ds.features().row(static_cast<Eigen::Index>(rows[i]));
    }
    return m;
  };
  split.minority = gather(split.minority_rows);
  split.majority = gather(split.majority_rows);
  return split;
}

std::vector<std::size_t> FoldPlan::train_rows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] != fold) rows.push_back(i);
  }
  return rows;
}

std::vector<std::size_t> FoldPlan::test_rows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == fold) rows.push_back(i);
  }
  return rows;
}

FoldPlan stratified_kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("stratified_kfold: k must be at least 2");
  std::vector<std::size_t> minority;
  std::vector<std::size_t> majority;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] == kMinority ? minority : majority).push_back(i);
  }
  if (minority.size() < k) {
    throw DataError("stratified_kfold: minority class (+1) has " + std::to_string(minority.size()) +
                    " rows, fewer than k=" + std::to_string(k));
  }
  if (majority.size() < k) {
    throw DataError("stratified_kfold: majority class (-1) has " + std::to_string(majority.size()) +
                    " rows, fewer than k=" + std::to_string(k));
  }

  FoldPlan plan{k, std::vector<std::size_t>(labels.size(), 0), seed};
  std::mt19937_64 rng(mix_seed(seed));
  seeded_shuffle(std::span(minority), rng);
  seeded_shuffle(std::span(majority), rng);
  // Majority assignment continues where the minority round-robin stopped so
  // total fold sizes stay balanced as well.
  for (std::size_t i = 0; i < minority.size(); ++i) plan.assignments[minority[i]] = i % k;
  const std::size_t offset = minority.size() % k;
  for (std::size_t i = 0; i < majority.size(); ++i) plan.assignments[majority[i]] = (offset + i) % k;
  return plan;
}

double imbalance_ratio(const LabeledDataset& ds) {
  return static_cast<double>(ds.majority_count()) / static_cast<double>(ds.minority_count());
}

}  // namespace frlstsvm
