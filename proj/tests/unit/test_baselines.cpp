#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "oracle/mini_instances.hpp"
#include "tfrom/baselines.hpp"
#include "tfrom/error.hpp"
#include "tfrom/metrics.hpp"

using namespace tfrom;

namespace {

std::vector<std::size_t> ids(const std::vector<ItemId>& items) {
  std::vector<std::size_t> out;
  for (auto i : items) out.push_back(i.index());
  return out;
}

}  // namespace

TEST_CASE("top_k") {
  const std::vector<std::size_t> labels{0, 0, 0};
  const auto inst = build_instance({{1, 2, 3}}, labels);
  const auto original = original_ranking(inst.preferences, CustomerId(0));
  CHECK(ids(top_k(original, 2).items) == std::vector<std::size_t>{2, 1});
  CHECK(ids(top_k(original, 3).items) == std::vector<std::size_t>{2, 1, 0});
  CHECK(ndcg(inst.preferences, top_k(original, 2), original) == 1.0);
  CHECK_THROWS_AS(top_k(original, 4), Error);
}

TEST_CASE("all_random") {
  const std::vector<std::size_t> labels{0, 0, 0, 0};
  const auto inst = build_instance({{1, 2, 3, 4}}, labels);
  const auto original = original_ranking(inst.preferences, CustomerId(0));

  auto full = ids(all_random(original, 4, 3).items);
  std::sort(full.begin(), full.end());
  CHECK(full == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(all_random(original, 3, 11).items == all_random(original, 3, 11).items);
  CHECK_THROWS_AS(all_random(original, 5, 0), Error);

  std::vector<int> hits(4, 0);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) ++hits[all_random(original, 1, seed).items[0].index()];
  for (int h : hits) CHECK(std::abs(h / 10000.0 - 0.25) <= 0.02);
}

TEST_CASE("minimum_exposure") {
  SUBCASE("least exposed provider goes first") {
    const std::vector<std::size_t> labels{0, 0, 1, 1};
    const auto inst = build_instance({{4, 3, 2, 1}}, labels);
    const auto original = original_ranking(inst.preferences, CustomerId(0));
    std::vector<double> ledger{5.0, 0.0};
    const auto list = minimum_exposure(original, inst.preferences, inst.catalog, ledger, 1);
    CHECK(inst.catalog.provider_of(list.items[0]) == ProviderId(1));
    CHECK(list.items[0] == ItemId(2));  // provider 1's most relevant item
    CHECK(ledger == std::vector<double>{5.0, 1.0});
  }
  SUBCASE("single provider equals top_k") {
    const std::vector<std::size_t> labels{0, 0, 0, 0};
    const auto inst = build_instance({{1, 4, 2, 3}}, labels);
    const auto original = original_ranking(inst.preferences, CustomerId(0));
    std::vector<double> ledger{0.0};
    CHECK(minimum_exposure(original, inst.preferences, inst.catalog, ledger, 3).items ==
          top_k(original, 3).items);
  }
  SUBCASE("fresh ledger spreads over three providers") {
    const std::vector<std::size_t> labels{0, 0, 1, 1, 2, 2};
    const auto inst = build_instance({{6, 5, 4, 3, 2, 1}}, labels);
    const auto original = original_ranking(inst.preferences, CustomerId(0));
    std::vector<double> ledger(3, 0.0);
    const auto list = minimum_exposure(original, inst.preferences, inst.catalog, ledger, 3);
    std::set<std::size_t> providers;
    for (auto i : list.items) providers.insert(inst.catalog.provider_of(i).index());
    CHECK(providers.size() == 3);
    CHECK(ids(list.items) == std::vector<std::size_t>{0, 2, 4});
  }
  SUBCASE("exhausted providers are skipped") {
    const std::vector<std::size_t> labels{0, 1, 1};
    const auto inst = build_instance({{1, 2, 3}}, labels);
    const auto original = original_ranking(inst.preferences, CustomerId(0));
    std::vector<double> ledger(2, 0.0);
    const auto list = minimum_exposure(original, inst.preferences, inst.catalog, ledger, 3);
    CHECK(ids(list.items) == std::vector<std::size_t>{0, 2, 1});
  }
  SUBCASE("shape errors") {
    const std::vector<std::size_t> labels{0, 1};
    const auto inst = build_instance({{1, 2}}, labels);
    const auto original = original_ranking(inst.preferences, CustomerId(0));
    std::vector<double> short_ledger(1, 0.0);
    CHECK_THROWS_AS(minimum_exposure(original, inst.preferences, inst.catalog, short_ledger, 1), Error);
  }
}

TEST_CASE("baselines emit valid lists and top_k has the best total quality") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto mini = oracle::random_mini(seed, 3, 5, 3);
    const auto& inst = mini.instance;
    const auto originals = original_rankings(inst.preferences);
    const std::size_t k = static_cast<std::size_t>(mini.problem.k);
    std::vector<double> ledger(inst.providers(), 0.0);

    for (std::size_t u = 0; u < inst.customers(); ++u) {
      const auto& o = originals[u];
      const auto t = top_k(o, k);
      const auto r = all_random(o, k, seed);
      const auto e = minimum_exposure(o, inst.preferences, inst.catalog, ledger, k);
      for (const auto* list : {&t, &r, &e}) CHECK_NOTHROW(validate_list(*list, inst));

      // Brute force over every ordered k-subset of the items.
      const std::size_t n = inst.items();
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      double best = 0.0;
      do {
        RecommendationList candidate{CustomerId(u), {}};
        for (std::size_t j = 0; j < k; ++j) candidate.items.emplace_back(perm[j]);
        best = std::max(best, ndcg(inst.preferences, candidate, o));
      } while (std::next_permutation(perm.begin(), perm.end()));
      CHECK(ndcg(inst.preferences, t, o) == doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("minimum_exposure keeps equal-size providers within one slot weight") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t l = 1 + bounded(rng, 3);
    const std::size_t per = 1 + bounded(rng, 2);
    const std::size_t n = l * per;
    const std::size_t m = 1 + bounded(rng, 3);
    const std::size_t k = 1 + bounded(rng, n);
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i % l;
    std::vector<std::vector<double>> rows(m, std::vector<double>(n));
    for (auto& row : rows)
      for (auto& v : row) v = unit_open_closed(rng);
    const auto inst = build_instance(rows, labels);
    const auto originals = original_rankings(inst.preferences);

    std::vector<double> ledger(l, 0.0);
    for (const auto& o : originals) minimum_exposure(o, inst.preferences, inst.catalog, ledger, k);
    const auto [lo, hi] = std::minmax_element(ledger.begin(), ledger.end());
    CHECK(*hi - *lo <= 1.0 + 1e-12);
  }
}
