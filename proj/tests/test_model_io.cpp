#include "doctest.h"
#include "frlstsvm/model_io.hpp"
#include "test_support.hpp"

using namespace frlstsvm;

namespace {

void check_same_predictions(const Model& a, const Model& b, const Matrix& probe) {
  const auto pa = predict(a, probe);
  const auto pb = predict(b, probe);
  REQUIRE(pa.size() == pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i].label == pb[i].label);
    CHECK(pa[i].dist1 == pb[i].dist1);
    CHECK(pa[i].dist2 == pb[i].dist2);
  }
}

}  // namespace

TEST_CASE("linear model round trip is exact") {
  const auto ds = testsupport::blobs(1, 12, 30, 3, 0.7);
  TrainConfig cfg;
  cfg.tau = 0.15;
  cfg.fuzzy.gamma = 0.7;
  cfg.fuzzy.tnorm = TNorm::product;
  const Model model = fit_frlstsvm(ds, cfg);
  const std::string text = serialize_model(model);
  CHECK(text.rfind("FRLSTSVM/1 linear\n", 0) == 0);
  const Model back = deserialize_model(text);
  CHECK(serialize_model(back) == text);
  const auto& a = std::get<LinearModel>(model);
  const auto& b = std::get<LinearModel>(back);
  CHECK(a.plane1.w == b.plane1.w);
  CHECK(a.plane2.b == b.plane2.b);
  CHECK(a.config == b.config);
  CHECK(a.scaling == b.scaling);
  CHECK(a.summary.majority_kept == b.summary.majority_kept);
  std::mt19937_64 rng(1);
  check_same_predictions(model, back, testsupport::random_matrix(rng, 50, 3, -3, 3));
}

TEST_CASE("kernel model round trip is exact") {
  const auto ds = testsupport::circles(2, 15, 30);
  TrainConfig cfg;
  cfg.kernel = {KernelType::gaussian, 0.37};
  const Model model = fit_frlstsvm(ds, cfg);
  const std::string text = serialize_model(model);
  CHECK(text.rfind("FRLSTSVM/1 gaussian\n", 0) == 0);
  const Model back = deserialize_model(text);
  CHECK(serialize_model(back) == text);
  CHECK(std::get<KernelModel>(back).gram == std::get<KernelModel>(model).gram);
  std::mt19937_64 rng(2);
  check_same_predictions(model, back, testsupport::random_matrix(rng, 50, 2, -1.2, 1.2));
}

TEST_CASE("identical fits produce identical model files") {
  const auto ds = testsupport::blobs(3, 10, 25, 2, 1.0);
  testsupport::TempDir dir;
  save_model(fit_frlstsvm(ds, TrainConfig{}), dir.file("a.model"));
  save_model(fit_frlstsvm(ds, TrainConfig{}), dir.file("b.model"));
  CHECK(testsupport::read_file(dir.file("a.model")) == testsupport::read_file(dir.file("b.model")));
  const Model loaded = load_model(dir.file("a.model"));
  CHECK(serialize_model(loaded) == testsupport::read_file(dir.file("a.model")));
}

TEST_CASE("malformed model files") {
  CHECK_THROWS_AS(deserialize_model(""), ParseError);
  CHECK_THROWS_AS(deserialize_model("NOTAMODEL linear\n"), ParseError);
  const auto ds = testsupport::blobs(4, 10, 20, 2, 1.0);
  const std::string good = serialize_model(fit_frlstsvm(ds, TrainConfig{}));
  CHECK_THROWS_AS(deserialize_model(good.substr(0, good.size() / 2)), ParseError);
  std::string bad = good;
  bad.replace(bad.find("gamma"), 5, "gamme");
  try {
    deserialize_model(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() > 1);
  }
  std::string kind = good;
  kind.replace(kind.find("linear"), 6, "cubic!");
  CHECK_THROWS_AS(deserialize_model(kind), ParseError);
  CHECK_THROWS_AS(load_model("/nonexistent/model.txt"), ParseError);
}

TEST_CASE("write_file_atomic replaces the file and leaves no temporaries") {
  testsupport::TempDir dir;
  const auto p = dir.file("out.txt");
  write_file_atomic(p, "one");
  write_file_atomic(p, "two");
  CHECK(testsupport::read_file(p) == "two");
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(p.parent_path())) files += e.is_regular_file();
  CHECK(files == 1);
  CHECK_THROWS_AS(write_file_atomic("/nonexistent/dir/x", "z"), Error);
}
