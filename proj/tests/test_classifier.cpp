#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "frlstsvm/classifier.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace frlstsvm;

namespace {

WeightVector unit(Eigen::Index n, ClassTag tag) { return {std::vector<double>(static_cast<std::size_t>(n), 1.0), tag}; }

WeightVector random_weights(std::mt19937_64& rng, Eigen::Index n, ClassTag tag) {
  return {testsupport::positive_weights(rng, static_cast<std::size_t>(n)), tag};
}

Vector stacked(const Hyperplane& p) {
  Vector u(p.w.size() + 1);
  u << p.w, p.b;
  return u;
}

double rel_diff(const Vector& a, const Vector& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

Matrix point(double x, double y) {
  Matrix m(1, 2);
  m << x, y;
  return m;
}

double accuracy(const Model& model, const LabeledDataset& ds) {
  const auto preds = predict(model, ds.features());
  std::size_t ok = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) ok += preds[i].label == ds.labels()[i];
  return static_cast<double>(ok) / static_cast<double>(preds.size());
}

}  // namespace

TEST_CASE("gaussian kernel values") {
  Eigen::RowVectorXd x(2), y(2);
  x << 0.3, -0.2;
  y << 1.3, -0.2;
  CHECK(gaussian_kernel(x, x, 0.7) == 1.0);
  CHECK(gaussian_kernel(x, y, std::sqrt(0.5)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  double prev = 0.0;
  for (double sigma = 0.1; sigma < 50.0; sigma *= 1.5) {
    const double k = gaussian_kernel(x, y, sigma);
    CHECK(k > prev);
    CHECK(k <= 1.0);
    prev = k;
  }
  std::mt19937_64 rng(2);
  const Matrix a = testsupport::random_matrix(rng, 9, 3);
  Matrix k = gaussian_kernel_matrix(a, a, 0.8);
  for (Eigen::Index i = 0; i < 9; ++i) {
    CHECK(k(i, i) == 1.0);
    for (Eigen::Index j = 0; j < 9; ++j) {
      CHECK(k(i, j) == k(j, i));
      CHECK(k(i, j) > 0.0);
    }
  }
}

TEST_CASE("mirror-symmetric two-point problem") {
  const Matrix x1 = point(1.0, 0.0);
  const Matrix x2 = point(-1.0, 0.0);
  for (const auto form : {SolverForm::dual, SolverForm::primal}) {
    const auto m = fit_linear(x1, x2, unit(1, ClassTag::minority), unit(1, ClassTag::majority), 1.0, 1.0, 1e-6, form);
    // Reflecting plane 1 through x -> -x gives (-w1, b1) = -(w2, b2): the same
    // hyperplane as plane 2, with the orientation each objective prefers.
    CHECK((m.plane1.w - m.plane2.w).norm() <= 1e-6);
    CHECK(std::abs(m.plane1.b + m.plane2.b) <= 1e-6);
    CHECK(predict_linear(m, Vector(point(2.0, 0.0).row(0).transpose())).label == kMinority);
    CHECK(predict_linear(m, Vector(point(-2.0, 0.0).row(0).transpose())).label == kMajority);
  }
  const auto base = fit_lstsvm_baseline(x1, x2, 1.0, 1.0, 1e-6);
  CHECK((base.plane1.w - base.plane2.w).norm() <= 1e-6);
  CHECK(std::abs(base.plane1.b + base.plane2.b) <= 1e-6);
}

TEST_CASE("tie at the symmetry point goes to the minority") {
  LinearModel m;
  m.plane1.w = Vector::Unit(2, 0);
  m.plane1.b = -1.0;
  m.plane2.w = -Vector::Unit(2, 0);
  m.plane2.b = -1.0;
  const auto p = predict_linear(m, Vector::Zero(2));
  CHECK(p.dist1 == p.dist2);
  CHECK(p.label == kMinority);
}

TEST_CASE("two-point problem matches the descent oracle") {
  const Matrix x1 = point(1.0, 0.0);
  const Matrix x2 = point(-1.0, 0.0);
  const auto m = fit_linear(x1, x2, unit(1, ClassTag::minority), unit(1, ClassTag::majority), 1.0, 1.0, 1e-6);
  const oracle::TwinObjective f(x1, x2, Vector::Ones(1), Vector::Ones(1), 1.0, 1.0, 1e-6);
  const Vector u1 = oracle::descend([&](const Vector& u) { return f.grad1(u); }, 3, 1e-14);
  CHECK(f.grad1(u1).norm() <= 1e-8);
  CHECK((stacked(m.plane1) - u1).norm() <= 1e-4);
}

TEST_CASE("unit-weight fit_linear agrees with the baseline") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + trial % 5);
    const auto m1 = static_cast<Eigen::Index>(3 + rng() % 15);
    const auto m2 = static_cast<Eigen::Index>(3 + rng() % 22);
    const Matrix x1 = testsupport::random_matrix(rng, m1, n, -1.0, 2.0);
    const Matrix x2 = testsupport::random_matrix(rng, m2, n, -2.0, 1.0);
    const double c1 = std::ldexp(1.0, static_cast<int>(rng() % 9) - 4);
    const double c2 = std::ldexp(1.0, static_cast<int>(rng() % 9) - 4);
    const auto base = fit_lstsvm_baseline(x1, x2, c1, c2, 1e-6);
    for (const auto form : {SolverForm::dual, SolverForm::primal}) {
      const auto fit = fit_linear(x1, x2, unit(m1, ClassTag::minority), unit(m2, ClassTag::majority), c1, c2, 1e-6, form);
      CHECK(rel_diff(stacked(fit.plane1), stacked(base.plane1)) <= 1e-6);
      CHECK(rel_diff(stacked(fit.plane2), stacked(base.plane2)) <= 1e-6);
    }
  }
}

TEST_CASE("weighted fit_linear zeroes the objective gradient in both forms") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 10; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + trial % 4);
    const Matrix x1 = testsupport::random_matrix(rng, 8 + trial, n);
    const Matrix x2 = testsupport::random_matrix(rng, 20 + trial, n, -1.5, 0.5);
    const auto d1 = random_weights(rng, x1.rows(), ClassTag::minority);
    const auto d2 = random_weights(rng, x2.rows(), ClassTag::majority);
    const double c1 = 0.5 + trial, c2 = 2.0 / (1 + trial);
    const oracle::TwinObjective f(x1, x2, d1.as_vector(), d2.as_vector(), c1, c2, 1e-6);
    const auto dual = fit_linear(x1, x2, d1, d2, c1, c2, 1e-6, SolverForm::dual);
    const auto primal = fit_linear(x1, x2, d1, d2, c1, c2, 1e-6, SolverForm::primal);
    for (const auto* m : {&dual, &primal}) {
      const Vector u1 = stacked(m->plane1), u2 = stacked(m->plane2);
      CHECK(f.grad1(u1).norm() <= 1e-6 * (1.0 + u1.norm()));
      CHECK(f.grad2(u2).norm() <= 1e-6 * (1.0 + u2.norm()));
    }
    CHECK(rel_diff(stacked(dual.plane1), stacked(primal.plane1)) <= 1e-8);
    CHECK(rel_diff(stacked(dual.plane2), stacked(primal.plane2)) <= 1e-8);
  }
}

TEST_CASE("fit_linear input validation") {
  const Matrix x1 = Matrix::Ones(3, 2);
  const Matrix x2 = Matrix::Zero(4, 2);
  CHECK_THROWS_AS(fit_linear(x1, Matrix::Zero(4, 3), unit(3, ClassTag::minority), unit(4, ClassTag::majority), 1, 1, 1e-6),
                  DimensionError);
  CHECK_THROWS_AS(fit_linear(x1, x2, unit(2, ClassTag::minority), unit(4, ClassTag::majority), 1, 1, 1e-6),
                  DimensionError);
  WeightVector zero{{1.0, 0.0, 1.0}, ClassTag::minority};
  CHECK_THROWS_AS(fit_linear(x1, x2, zero, unit(4, ClassTag::majority), 1, 1, 1e-6), DataError);
  CHECK_THROWS_AS(fit_linear(x1, x2, unit(3, ClassTag::minority), unit(4, ClassTag::majority), 0, 1, 1e-6),
                  ConfigError);
}

TEST_CASE("positive rescaling of a plane changes no prediction") {
  std::mt19937_64 rng(303);
  const auto ds = testsupport::blobs(4, 15, 40, 3, 0.8);
  TrainConfig cfg;
  cfg.tau = 0.1;
  const auto model = std::get<LinearModel>(fit_frlstsvm(ds, cfg));
  LinearModel scaled = model;
  scaled.plane1.w *= 7.5;
  scaled.plane1.b *= 7.5;
  scaled.plane2.w *= 0.125;
  scaled.plane2.b *= 0.125;
  const Matrix probe = testsupport::random_matrix(rng, 200, 3, -3.0, 3.0);
  const auto a = predict(Model(model), probe);
  const auto b = predict(Model(scaled), probe);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].label == b[i].label);
}

TEST_CASE("degenerate planes") {
  LinearModel m;
  m.plane1.w = Vector::Zero(2);
  m.plane2.w = Vector::Unit(2, 0);
  m.plane2.b = 0.0;
  const auto p = predict_linear(m, Vector::Ones(2));
  CHECK(std::isinf(p.dist1));
  CHECK(p.label == kMajority);
  CHECK(m.plane1.degenerate());
  m.plane2.w = Vector::Zero(2);
  CHECK_THROWS_AS(predict_linear(m, Vector::Ones(2)), DataError);

  KernelModel k;
  k.reference = Matrix::Zero(2, 1);
  k.gram = Matrix::Ones(2, 2);
  k.w1 = Vector::Zero(2);
  k.w2 = Vector::Zero(2);
  k.kernel = {KernelType::gaussian, 1.0};
  CHECK_THROWS_AS(predict_kernel(k, Vector::Zero(1)), DataError);
}

TEST_CASE("prediction dimension mismatch") {
  const auto ds = testsupport::blobs(6, 10, 20, 2, 1.0);
  const Model model = fit_frlstsvm(ds, TrainConfig{});
  CHECK_THROWS_AS(predict(model, Matrix(Matrix::Zero(3, 3))), DimensionError);
  CHECK_THROWS_AS(predict(model, Vector(Vector::Zero(3))), DimensionError);
}

TEST_CASE("balanced blobs: baseline training accuracy at least 0.95") {
  const auto ds = testsupport::blobs(7, 100, 100, 2, 2.0);
  const auto split = split_by_class(ds);
  const Model base = fit_lstsvm_baseline(split.minority, split.majority, 1.0, 1.0, 1e-6);
  CHECK(accuracy(base, ds) >= 0.95);
}

TEST_CASE("pipeline with tau 0 and unit weights reduces to the baseline") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto ds = testsupport::blobs(seed + 40, 12 + seed, 30 + 3 * seed, 2 + seed % 3, 0.5);
    TrainConfig cfg;
    cfg.tau = 0.0;
    cfg.weights_enabled = false;
    const auto model = std::get<LinearModel>(fit_frlstsvm(ds, cfg));
    const auto scaling = minmax_fit(ds.features());
    const auto split = split_by_class(ds.scaled(scaling));
    LinearModel base = fit_lstsvm_baseline(split.minority, split.majority, cfg.c1, cfg.c2, cfg.delta);
    base.scaling = scaling;
    CHECK(rel_diff(stacked(model.plane1), stacked(base.plane1)) <= 1e-6);
    CHECK(rel_diff(stacked(model.plane2), stacked(base.plane2)) <= 1e-6);
    const auto a = predict(Model(model), ds.features());
    const auto b = predict(Model(base), ds.features());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].label == b[i].label);
    CHECK(model.summary.majority_kept == split.majority.rows());
  }
}

TEST_CASE("fit_frlstsvm records the kept majority and rejects an emptying tau") {
  const auto ds = testsupport::blobs(9, 10, 40, 2, 1.0);
  TrainConfig cfg;
  cfg.tau = 0.3;
  const auto model = std::get<LinearModel>(fit_frlstsvm(ds, cfg));
  CHECK(model.summary.majority_count == 40);
  CHECK(model.summary.majority_kept <= 40);
  CHECK(model.summary.minority_count == 10);
  CHECK(model.scaling.has_value());
  cfg.tau = 1.0;
  CHECK_THROWS_AS(fit_frlstsvm(ds, cfg), EmptySelectionError);
  TrainConfig bad;
  bad.c1 = -1.0;
  CHECK_THROWS_AS(fit_frlstsvm(ds, bad), ConfigError);
}

TEST_CASE("permuting rows within each class leaves predictions unchanged") {
  const auto ds = testsupport::blobs(10, 15, 35, 3, 0.6);
  std::vector<std::size_t> order(ds.rows());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(10);
  seeded_shuffle(std::span<std::size_t>(order), rng);
  const auto permuted = ds.subset(order);
  TrainConfig cfg;
  cfg.tau = 0.2;
  const Model a = fit_frlstsvm(ds, cfg);
  const Model b = fit_frlstsvm(permuted, cfg);
  const Matrix probe = testsupport::random_matrix(rng, 300, 3, -3.0, 3.0);
  const auto pa = predict(a, probe);
  const auto pb = predict(b, probe);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    differ += pa[i].label != pb[i].label;
    CHECK(pa[i].dist1 == doctest::Approx(pb[i].dist1).epsilon(1e-8));
  }
  CHECK(differ == 0);
}

TEST_CASE("kernel fit: dual and primal agree and match a unit-weight baseline") {
  const auto ds = testsupport::circles(12, 25, 50);
  const auto split = split_by_class(ds.scaled(minmax_fit(ds.features())));
  TrainConfig cfg;
  cfg.kernel = {KernelType::gaussian, 0.5};
  cfg.c1 = cfg.c2 = 4.0;
  const auto u1 = unit(split.minority.rows(), ClassTag::minority);
  const auto u2 = unit(split.majority.rows(), ClassTag::majority);
  cfg.solver = SolverForm::dual;
  const auto dual = fit_kernel(split.minority, split.majority, u1, u2, cfg);
  cfg.solver = SolverForm::primal;
  const auto primal = fit_kernel(split.minority, split.majority, u1, u2, cfg);

  // Baseline assembled from the kernel matrices with the unweighted formula.
  const Matrix p = oracle::with_ones(dual.gram.topRows(split.minority.rows()));
  const Matrix q = oracle::with_ones(dual.gram.bottomRows(split.majority.rows()));
  Matrix a1 = q.transpose() * q + p.transpose() * p / cfg.c1;
  a1.diagonal().array() += cfg.delta / cfg.c1;
  const Vector z1 = a1.ldlt().solve(-(q.transpose() * Vector::Ones(q.rows())));
  Vector got1(dual.w1.size() + 1);
  got1 << dual.w1, dual.b1;
  Vector got1p(primal.w1.size() + 1);
  got1p << primal.w1, primal.b1;
  // Coefficients are ill-determined along near-null directions of the Gram
  // matrix; compare the fitted surfaces instead of raw coefficients.
  const Vector s_base = p * z1, s_dual = p * got1, s_primal = p * got1p;
  CHECK((s_dual - s_base).norm() <= 1e-6 * std::max(1.0, s_base.norm()));
  CHECK((s_primal - s_base).norm() <= 1e-6 * std::max(1.0, s_base.norm()));

  for (Eigen::Index i = 0; i < dual.gram.rows(); ++i) CHECK(dual.gram(i, i) == 1.0);
  CHECK(dual.gram == dual.gram.transpose());
}

TEST_CASE("kernel model separates concentric circles where the linear model cannot") {
  const auto ds = testsupport::circles(13, 60, 140);
  TrainConfig kcfg;
  kcfg.kernel = {KernelType::gaussian, 0.25};
  kcfg.c1 = kcfg.c2 = 8.0;
  const Model kernel = fit_frlstsvm(ds, kcfg);
  const Model linear = fit_frlstsvm(ds, TrainConfig{});
  CHECK(accuracy(kernel, ds) >= 0.95);
  CHECK(accuracy(linear, ds) <= 0.70);
  const Vector inner = Vector::Zero(2);
  CHECK(predict(kernel, inner).label == kMinority);
}

TEST_CASE("kernel predictions ignore positive rescaling of a surface") {
  const auto ds = testsupport::circles(14, 30, 60);
  TrainConfig cfg;
  cfg.kernel = {KernelType::gaussian, 0.3};
  auto model = std::get<KernelModel>(fit_frlstsvm(ds, cfg));
  std::mt19937_64 rng(14);
  const Matrix probe = testsupport::random_matrix(rng, 100, 2, -1.2, 1.2);
  const auto before = predict(Model(model), probe);
  model.w1 *= 3.0;
  model.b1 *= 3.0;
  const auto after = predict(Model(model), probe);
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(before[i].label == after[i].label);
  // Single-row and batch paths agree.
  for (Eigen::Index i = 0; i < 10; ++i) {
    const auto one = predict(Model(model), Vector(probe.row(i).transpose()));
    CHECK(one.label == after[static_cast<std::size_t>(i)].label);
    CHECK(one.dist1 == doctest::Approx(after[static_cast<std::size_t>(i)].dist1));
  }
}

TEST_CASE("duplicating minority rows keeps kernel predictions") {
  const auto ds = testsupport::circles(15, 20, 50);
  std::vector<std::size_t> rows(ds.rows());
  std::iota(rows.begin(), rows.end(), 0);
  for (std::size_t i = 0; i < ds.rows(); ++i)
    if (ds.labels()[i] == kMinority) rows.push_back(i);
  const auto dup = ds.subset(rows);
  TrainConfig cfg;
  cfg.kernel = {KernelType::gaussian, 0.3};
  cfg.tau = 0.0;
  cfg.weights_enabled = false;
  const Model a = fit_frlstsvm(ds, cfg);
  const Model b = fit_frlstsvm(dup, cfg);
  std::mt19937_64 rng(15);
  const Matrix probe = testsupport::random_matrix(rng, 200, 2, -1.2, 1.2);
  const auto pa = predict(a, probe);
  const auto pb = predict(b, probe);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const bool near_tie = std::abs(pa[i].dist1 - pa[i].dist2) < 1e-3 * std::max(pa[i].dist1, pa[i].dist2);
    differ += (pa[i].label != pb[i].label) && !near_tie;
  }
  // Duplicated rows double their weight in the plane-2 fit, so agreement is
  // expected only away from the decision boundary.
  CHECK(differ <= pa.size() / 20);
}

TEST_CASE("train config validation and enum parsing") {
  TrainConfig c;
  CHECK_NOTHROW(c.validate());
  c.tau = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = TrainConfig{};
  c.kernel = {KernelType::gaussian, 0.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = TrainConfig{};
  c.delta = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(parse_kernel_type("rbf") == KernelType::gaussian);
  CHECK(parse_solver_form("primal") == SolverForm::primal);
  CHECK_THROWS_AS(parse_kernel_type("poly"), ConfigError);
  CHECK_THROWS_AS(parse_solver_form("qp"), ConfigError);
}
