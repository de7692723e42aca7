#include <doctest.h>

#include <cmath>
#include <vector>

#include "driftguard/calibration.hpp"
#include "driftguard/stream_sim.hpp"

using namespace driftguard;

namespace {

Vector unit(int d, int i, double scale = 1.0) {
  Vector v = Vector::Zero(d);
  v[i] = scale;
  return v;
}

bool same(const LabeledSample& a, const LabeledSample& b) { return a.label == b.label && a.feature == b.feature; }

}  // namespace

TEST_CASE("default stream layout") {
  const StreamConfig cfg = StreamConfig::make_default(1, 10);
  CHECK(cfg.class_means.size() == 4);
  CHECK(cfg.class_means[2] == unit(8, 2, 2.0));
  CHECK(cfg.class_cov == Matrix::Identity(8, 8));
  CHECK_FALSE(cfg.change_point.has_value());
  CHECK_THROWS_AS(StreamConfig::make_default(1, 10, 2, 4), InvalidInput);
}

TEST_CASE("generation is deterministic and counter based") {
  StreamConfig cfg = StreamConfig::make_default(5, 200);
  const auto a = generate(cfg);
  const auto b = generate(cfg);
  REQUIRE(a.size() == 200);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(same(a[i], b[i]));
  const StreamGenerator gen(cfg);
  CHECK(same(gen.sample(137), a[136]));
  cfg.seed = 6;
  CHECK_FALSE(same(generate(cfg)[0], a[0]));
}

TEST_CASE("an empty stream has no samples") {
  CHECK(generate(StreamConfig::make_default(1, 0)).empty());
  GeneratedSource src(StreamConfig::make_default(1, 0));
  CHECK_FALSE(src.next().has_value());
  CHECK(src.position() == 0);
}

TEST_CASE("source hands out samples in order") {
  const StreamConfig cfg = StreamConfig::make_default(2, 5);
  GeneratedSource src(cfg);
  const auto all = generate(cfg);
  for (std::size_t t = 1; t <= 5; ++t) {
    auto s = src.next();
    REQUIRE(s.has_value());
    CHECK(src.position() == t);
    CHECK(same(*s, all[t - 1]));
  }
  CHECK_FALSE(src.next().has_value());
}

TEST_CASE("pre-change segment does not depend on the shift") {
  StreamConfig a = StreamConfig::make_default(3, 100);
  a.change_point = 40;
  a.shift = MeanTranslate{unit(8, 0, 2.0)};
  StreamConfig b = a;
  b.shift = CovarianceScale{3.0};
  const auto sa = generate(a), sb = generate(b);
  for (std::size_t i = 0; i < 40; ++i) CHECK(same(sa[i], sb[i]));
  CHECK_FALSE(same(sa[40], sb[40]));
  const StreamGenerator gen(a);
  CHECK_FALSE(gen.is_shifted(40));
  CHECK(gen.is_shifted(41));
}

TEST_CASE("label frequencies follow the prior") {
  StreamConfig cfg = StreamConfig::make_default(4, 40000);
  cfg.prior = Vector(4);
  cfg.prior << 0.1, 0.2, 0.3, 0.4;
  std::vector<double> count(4, 0.0);
  for (const auto& s : generate(cfg)) count[static_cast<std::size_t>(s.label)] += 1.0;
  for (int c = 0; c < 4; ++c) {
    const double p = cfg.prior[c];
    CHECK(std::fabs(count[c] / 40000.0 - p) <= 4.0 * std::sqrt(p * (1 - p) / 40000.0));
  }
}

TEST_CASE("class prior shift changes label frequencies after the change point") {
  StreamConfig cfg = StreamConfig::make_default(5, 20000);
  cfg.change_point = 10000;
  Vector prior(4);
  prior << 1.0, 0.0, 0.0, 0.0;
  cfg.shift = ClassPriorShift{prior};
  const auto s = generate(cfg);
  for (std::size_t i = 10000; i < s.size(); ++i) CHECK(s[i].label == 0);
}

TEST_CASE("a mean shift of length two raises the squared Mahalanobis distance by four") {
  StreamConfig cfg = StreamConfig::make_default(6, 400000);
  for (auto& m : cfg.class_means) m.setZero();
  cfg.change_point = 200000;
  cfg.shift = MeanTranslate{unit(8, 0, 2.0)};
  const FeatureStats stats(Vector::Zero(8), Matrix::Identity(8, 8));
  double pre = 0.0, post = 0.0;
  const auto s = generate(cfg);
  for (std::size_t i = 0; i < s.size(); ++i) (i < 200000 ? pre : post) += mahalanobis_sq(s[i].feature, stats);
  const double rise = (post - pre) / 200000.0;
  CHECK(rise == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("a zero shift has no positive growth rate") {
  StreamConfig cfg = StreamConfig::make_default(7, 4000);
  cfg.change_point = 2000;
  cfg.shift = MeanTranslate{Vector::Zero(8)};
  const auto base = generate(StreamConfig::make_default(8, 3000));
  std::vector<Vector> feats;
  for (const auto& s : base) feats.push_back(s.feature);
  const FeatureStats stats = FeatureStats::estimate(feats);
  const PromptParams params = PromptParams::from_class_means(class_means(base, 4));
  const auto scored = generate_score_stream(cfg, params, stats, {});
  std::vector<double> pre, post;
  for (const auto& s : scored) (s.t <= 2000 ? pre : post).push_back(s.score);
  const double mu = fit_mu_hat(pre);
  const double psi = bootstrap_psi_bar(pre, mu, 0.5, 500, 0.05, 1);
  double post_mean = 0.0;
  for (double v : post) post_mean += v;
  post_mean /= static_cast<double>(post.size());
  CHECK(0.5 * (post_mean - mu) - psi <= 0.01);
}

TEST_CASE("chained segments concatenate") {
  std::vector<StreamConfig> segs = {StreamConfig::make_default(1, 30), StreamConfig::make_default(2, 20)};
  const auto all = generate_chained(segs);
  REQUIRE(all.size() == 50);
  CHECK(same(all[0], generate(segs[0])[0]));
}

TEST_CASE("invalid stream configurations are rejected") {
  StreamConfig cfg = StreamConfig::make_default(1, 10);
  cfg.change_point = 10;
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  cfg = StreamConfig::make_default(1, 10);
  cfg.shift = MeanTranslate{Vector::Zero(3)};
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  cfg = StreamConfig::make_default(1, 10);
  cfg.class_cov(0, 1) = 0.5;
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  cfg = StreamConfig::make_default(1, 10);
  cfg.prior = Vector::Constant(4, 0.3);
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
}
