#include "frlstsvm/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "text_util.hpp"

namespace frlstsvm {

namespace {

constexpr std::string_view kMagic = "FRLSTSVM/1";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_config(std::ostringstream& os, const TrainConfig& c) {
  os << "config 13\n"
     << "c1 " << fmt(c.c1) << '\n'
     << "c2 " << fmt(c.c2) << '\n'
     << "delta " << fmt(c.delta) << '\n'
     << "tau " << fmt(c.tau) << '\n'
     << "gamma " << fmt(c.fuzzy.gamma) << '\n'
     << "tnorm " << to_string(c.fuzzy.tnorm) << '\n'
     << "implicator " << to_string(c.fuzzy.implicator) << '\n'
     << "score_mode " << to_string(c.fuzzy.score_mode) << '\n'
     << "kernel " << to_string(c.kernel.type) << '\n'
     << "sigma " << fmt(c.kernel.sigma) << '\n'
     << "subsample " << (c.subsample_enabled ? 1 : 0) << '\n'
     << "weights " << (c.weights_enabled ? 1 : 0) << '\n'
     << "solver " << to_string(c.solver) << '\n';
}

void write_summary(std::ostringstream& os, const TrainingSummary& s) {
  os << "summary 3\n"
     << "minority_count " << s.minority_count << '\n'
     << "majority_count " << s.majority_count << '\n'
     << "majority_kept " << s.majority_kept << '\n';
}

void write_scaling(std::ostringstream& os, const std::optional<ScalingParams>& s) {
  if (!s) {
    os << "scaling 0\n";
    return;
  }
  os << "scaling " << s->size() << '\n';
  for (std::size_t j = 0; j < s->size(); ++j) os << fmt(s->minimum[j]) << ' ' << fmt(s->range[j]) << '\n';
}

void write_vector(std::ostringstream& os, std::string_view name, const Vector& v, double bias) {
  os << name << ' ' << v.size() << '\n';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << fmt(v(i)) << '\n';
  os << "bias " << fmt(bias) << '\n';
}

// Line-oriented reader with section helpers.
class Reader {
 public:
  explicit Reader(const std::string& text) : in_(text) {}

  std::vector<std::string> next_fields() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (text::trim(line).empty()) continue;
      std::vector<std::string> out;
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) out.push_back(tok);
      return out;
    }
    fail("unexpected end of model file");
  }

  std::size_t section(std::string_view name, std::size_t arity = 1, std::vector<std::size_t>* extra = nullptr) {
    const auto f = next_fields();
    if (f.size() != 1 + arity || f[0] != name) fail("expected section '" + std::string(name) + "'");
    if (extra) {
      for (std::size_t i = 2; i < f.size(); ++i) extra->push_back(to_count(f[i]));
    }
    return to_count(f[1]);
  }

  std::string keyed(std::string_view key) {
    const auto f = next_fields();
    if (f.size() != 2 || f[0] != key) fail("expected '" + std::string(key) + " <value>'");
    return f[1];
  }

  double keyed_real(std::string_view key) { return to_real(keyed(key)); }

  double to_real(const std::string& s) {
    const auto v = text::parse_double(s);
    if (!v) fail("invalid real '" + s + "'");
    return *v;
  }

  std::size_t to_count(const std::string& s) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("invalid count '" + s + "'");
    return v;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("model file line " + std::to_string(line_) + ": " + msg, line_);
  }

 private:
  std::istringstream in_;
  std::size_t line_ = 0;
};

TrainConfig read_config(Reader& r) {
  if (r.section("config") != 13) r.fail("config section must have 13 entries");
  TrainConfig c;
  c.c1 = r.keyed_real("c1");
  c.c2 = r.keyed_real("c2");
  c.delta = r.keyed_real("delta");
  c.tau = r.keyed_real("tau");
  c.fuzzy.gamma = r.keyed_real("gamma");
  c.fuzzy.tnorm = parse_tnorm(r.keyed("tnorm"));
  c.fuzzy.implicator = parse_implicator(r.keyed("implicator"));
  c.fuzzy.score_mode = parse_score_mode(r.keyed("score_mode"));
  c.kernel.type = parse_kernel_type(r.keyed("kernel"));
  c.kernel.sigma = r.keyed_real("sigma");
  c.subsample_enabled = r.keyed("subsample") == "1";
  c.weights_enabled = r.keyed("weights") == "1";
  c.solver = parse_solver_form(r.keyed("solver"));
  return c;
}

TrainingSummary read_summary(Reader& r) {
  if (r.section("summary") != 3) r.fail("summary section must have 3 entries");
  TrainingSummary s;
  s.minority_count = r.to_count(r.keyed("minority_count"));
  s.majority_count = r.to_count(r.keyed("majority_count"));
  s.majority_kept = r.to_count(r.keyed("majority_kept"));
  return s;
}

std::optional<ScalingParams> read_scaling(Reader& r) {
  const auto n = r.section("scaling");
  if (n == 0) return std::nullopt;
  ScalingParams s;
  for (std::size_t j = 0; j < n; ++j) {
    const auto f = r.next_fields();
    if (f.size() != 2) r.fail("scaling entries are '<min> <range>'");
    s.minimum.push_back(r.to_real(f[0]));
    s.range.push_back(r.to_real(f[1]));
  }
  return s;
}

std::pair<Vector, double> read_vector(Reader& r, std::string_view name) {
  const auto n = r.section(name);
  Vector v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = r.next_fields();
    if (f.size() != 1) r.fail("expected one value per line");
    v(static_cast<Eigen::Index>(i)) = r.to_real(f[0]);
  }
  return {std::move(v), r.keyed_real("bias")};
}

}  // namespace

std::string serialize_model(const Model& model) {
  std::ostringstream os;
  if (const auto* lm = std::get_if<LinearModel>(&model)) {
    os << kMagic << " linear\n";
    write_config(os, lm->config);
    write_summary(os, lm->summary);
    write_scaling(os, lm->scaling);
    write_vector(os, "plane1", lm->plane1.w, lm->plane1.b);
    write_vector(os, "plane2", lm->plane2.w, lm->plane2.b);
    return os.str();
  }
  const auto& km = std::get<KernelModel>(model);
  os << kMagic << " gaussian\n";
  write_config(os, km.config);
  write_summary(os, km.summary);
  write_scaling(os, km.scaling);
  os << "reference " << km.reference.rows() << ' ' << km.reference.cols() << '\n';
  for (Eigen::Index i = 0; i < km.reference.rows(); ++i) {
    for (Eigen::Index j = 0; j < km.reference.cols(); ++j) os << (j ? " " : "") << fmt(km.reference(i, j));
    os << '\n';
  }
  write_vector(os, "coef1", km.w1, km.b1);
  write_vector(os, "coef2", km.w2, km.b2);
  return os.str();
}

Model deserialize_model(const std::string& text) {
  Reader r(text);
  const auto header = r.next_fields();
  if (header.size() != 2 || header[0] != kMagic) r.fail("not a FRLSTSVM/1 model file");
  const TrainConfig config = read_config(r);
  const TrainingSummary summary = read_summary(r);
  auto scaling = read_scaling(r);

  if (header[1] == "linear") {
    LinearModel m;
    m.config = config;
    m.summary = summary;
    m.scaling = std::move(scaling);
    std::tie(m.plane1.w, m.plane1.b) = read_vector(r, "plane1");
    std::tie(m.plane2.w, m.plane2.b) = read_vector(r, "plane2");
    if (m.plane1.w.size() != m.plane2.w.size()) r.fail("plane dimensions differ");
    if (m.scaling && m.scaling->size() != m.dimension()) r.fail("scaling dimension differs from planes");
    return m;
  }
  if (header[1] != "gaussian") r.fail("unknown model kind '" + header[1] + "'");

  KernelModel m;
  m.config = config;
  m.kernel = config.kernel;
  m.summary = summary;
  m.scaling = std::move(scaling);
  std::vector<std::size_t> dims;
  const auto rows = r.section("reference", 2, &dims);
  const auto cols = dims.at(0);
  m.reference.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const auto f = r.next_fields();
    if (f.size() != cols) r.fail("reference row has the wrong number of values");
    for (std::size_t j = 0; j < cols; ++j) {
      m.reference(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r.to_real(f[j]);
    }
  }
  std::tie(m.w1, m.b1) = read_vector(r, "coef1");
  std::tie(m.w2, m.b2) = read_vector(r, "coef2");
  if (static_cast<std::size_t>(m.w1.size()) != rows || static_cast<std::size_t>(m.w2.size()) != rows) {
    r.fail("coefficient length differs from reference rows");
  }
  if (m.scaling && m.scaling->size() != cols) r.fail("scaling dimension differs from reference");
  m.gram = gaussian_kernel_matrix(m.reference, m.reference, m.kernel.sigma);
  m.gram.triangularView<Eigen::StrictlyLower>() = m.gram.transpose();
  return m;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_model(model));
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_model(ss.str());
}

}  // namespace frlstsvm
