#include <doctest.h>

#include <cmath>

#include "tfrom/error.hpp"
#include "tfrom/random.hpp"
#include "tfrom/targets.hpp"

using namespace tfrom;

namespace {

bool close(double a, double b, double rel = 1e-12) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("total_exposure hand values") {
  CHECK(total_exposure(1, 1) == 1.0);
  CHECK(close(total_exposure(2, 2), 3.261859507142915));
  CHECK(close(total_exposure(2, 3), 4.261859507142915));
  CHECK_THROWS_AS(total_exposure(0, 3), Error);
  CHECK_THROWS_AS(total_exposure(3, 0), Error);
}

TEST_CASE("online_total_exposure") {
  CHECK(online_total_exposure(0, 5) == 0.0);
  CHECK(close(online_total_exposure(1, 2), 1.6309297535714573));
  CHECK(online_total_exposure(10, 1) == 10.0);
  for (std::size_t c = 1; c < 30; ++c) {
    for (std::size_t k = 1; k < 12; ++k) CHECK(online_total_exposure(c, k) == total_exposure(c, k));
  }
}

TEST_CASE("fair_targets hand values") {
  const std::vector<std::size_t> sizes{0, 1, 1, 1};
  const auto inst = build_instance({{1, 1, 1, 1}}, sizes);
  const auto uniform = fair_targets(FairnessMode::Uniform, 4.0, inst.catalog, inst.preferences);
  CHECK(uniform.per_provider == std::vector<double>{1.0, 3.0});
  CHECK(uniform.total == 4.0);

  const std::vector<std::size_t> single{0, 0};
  const auto one = build_instance({{1, 2}}, single);
  CHECK(fair_targets(FairnessMode::Uniform, 2.5, one.catalog, one.preferences).per_provider ==
        std::vector<double>{2.5});

  // Provider relevance sums 2 and 3.
  const std::vector<std::size_t> two{0, 1, 1};
  const auto qw = build_instance({{1, 1, 2}, {1, 0, 0}}, two);
  const auto t = fair_targets(FairnessMode::QualityWeighted, 10.0, qw.catalog, qw.preferences);
  CHECK(close(t.per_provider[0], 4.0));
  CHECK(close(t.per_provider[1], 6.0));
}

TEST_CASE("fair_targets properties") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + bounded(rng, 5);
    const std::size_t n = 1 + bounded(rng, 10);
    std::vector<std::vector<double>> rows(m, std::vector<double>(n));
    for (auto& row : rows)
      for (auto& v : row) v = unit_open_closed(rng);
    std::vector<std::size_t> labels(n);
    for (auto& p : labels) p = bounded(rng, 4);
    const auto inst = build_instance(rows, labels);
    const double E = unit_open_closed(rng) * 100.0;

    for (auto mode : {FairnessMode::Uniform, FairnessMode::QualityWeighted}) {
      const auto t = fair_targets(mode, E, inst.catalog, inst.preferences);
      CHECK(std::abs(sum(t.per_provider) - E) <= 1e-9);
      for (double x : t.per_provider) CHECK(x >= 0.0);
    }

    // Scaling V leaves quality-weighted targets unchanged.
    auto scaled_rows = rows;
    for (auto& row : scaled_rows)
      for (auto& v : row) v *= 3.5;
    const auto scaled = build_instance(scaled_rows, labels);
    const auto a = fair_targets(FairnessMode::QualityWeighted, E, inst.catalog, inst.preferences);
    const auto b = fair_targets(FairnessMode::QualityWeighted, E, scaled.catalog, scaled.preferences);
    for (std::size_t p = 0; p < a.per_provider.size(); ++p) {
      CHECK(close(a.per_provider[p], b.per_provider[p], 1e-12));
    }

    // Relabeling providers permutes uniform targets accordingly.
    const auto perm = seeded_permutation(4, trial);
    std::vector<std::size_t> relabeled(n);
    for (std::size_t i = 0; i < n; ++i) relabeled[i] = perm[labels[i]];
    const auto moved = build_instance(rows, relabeled);
    const auto u1 = fair_targets(FairnessMode::Uniform, E, inst.catalog, inst.preferences);
    const auto u2 = fair_targets(FairnessMode::Uniform, E, moved.catalog, moved.preferences);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(u1.per_provider[inst.catalog.provider_of(ItemId(i)).index()] ==
            u2.per_provider[moved.catalog.provider_of(ItemId(i)).index()]);
    }
  }
}

TEST_CASE("fairness mode parsing") {
  CHECK(parse_fairness_mode("uniform") == FairnessMode::Uniform);
  CHECK(parse_fairness_mode("quality-weighted") == FairnessMode::QualityWeighted);
  CHECK(!parse_fairness_mode("qw"));
  CHECK(to_string(FairnessMode::QualityWeighted) == "quality-weighted");
}

TEST_CASE("negative budget is rejected") {
  const std::vector<std::size_t> one{0};
  const auto inst = build_instance({{1}}, one);
  CHECK_THROWS_AS(fair_targets(FairnessMode::Uniform, -1.0, inst.catalog, inst.preferences), Error);
}
