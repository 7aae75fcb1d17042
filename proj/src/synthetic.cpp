#include "tfrom/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tfrom/error.hpp"
#include "tfrom/random.hpp"

namespace tfrom {

std::optional<ScoreDistribution> parse_score_distribution(std::string_view text) {
  if (text == "uniform") return ScoreDistribution::Uniform;
  if (text == "exponential") return ScoreDistribution::Exponential;
  return std::nullopt;
}

std::string_view to_string(ScoreDistribution dist) {
  return dist == ScoreDistribution::Uniform ? "uniform" : "exponential";
}

namespace {

void check(const SyntheticSpec& spec) {
  if (spec.customers == 0 || spec.items == 0 || spec.providers == 0) {
    throw Error(ErrorCode::InvalidShape, "customers, items and providers must be positive");
  }
  if (spec.providers > spec.items) {
    throw Error(ErrorCode::InvalidShape, "more providers (" + std::to_string(spec.providers) +
                                             ") than items (" + std::to_string(spec.items) + ")");
  }
  if (!std::isfinite(spec.provider_size_skew) || spec.provider_size_skew < 0.0) {
    throw Error(ErrorCode::InvalidShape, "provider size skew must be finite and >= 0");
  }
}

}  // namespace

std::vector<std::size_t> synthetic_provider_sizes(const SyntheticSpec& spec) {
  check(spec);
  const std::size_t l = spec.providers;
  const std::size_t spare = spec.items - l;

  std::vector<double> weight(l);
  double weight_sum = 0.0;
  for (std::size_t r = 0; r < l; ++r) {
    weight[r] = std::pow(static_cast<double>(r + 1), -spec.provider_size_skew);
    weight_sum += weight[r];
  }
  // Largest-remainder apportionment of the spare items over size ranks.
  std::vector<std::size_t> by_rank(l);
  std::vector<std::pair<double, std::size_t>> remainder(l);
  std::size_t given = 0;
  for (std::size_t r = 0; r < l; ++r) {
    const double exact = static_cast<double>(spare) * weight[r] / weight_sum;
    by_rank[r] = static_cast<std::size_t>(std::floor(exact));
    given += by_rank[r];
    remainder[r] = {exact - std::floor(exact), r};
  }
  std::stable_sort(remainder.begin(), remainder.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t j = 0; given < spare; ++j, ++given) ++by_rank[remainder[j].second];

  const auto rank_of = seeded_permutation(l, derive_seed(spec.seed, 1));
  std::vector<std::size_t> sizes(l);
  for (std::size_t p = 0; p < l; ++p) sizes[p] = 1 + by_rank[rank_of[p]];
  return sizes;
}

LoadedInstance generate_synthetic(const SyntheticSpec& spec) {
  const auto sizes = synthetic_provider_sizes(spec);
  const std::size_t m = spec.customers;
  const std::size_t n = spec.items;

  const auto item_order = seeded_permutation(n, derive_seed(spec.seed, 2));
  std::vector<std::size_t> provider_of(n);
  std::size_t cursor = 0;
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    for (std::size_t j = 0; j < sizes[p]; ++j) provider_of[item_order[cursor++]] = p;
  }

  Rng rng(derive_seed(spec.seed, 3));
  std::vector<double> scores(m * n);
  for (double& v : scores) {
    const double x = unit_open_closed(rng);
    v = spec.distribution == ScoreDistribution::Uniform ? x : -std::log(x);
  }

  LoadedInstance out{build_instance(m, n, std::move(scores), provider_of), {}, {}, {}, {}};
  for (std::size_t u = 0; u < m; ++u) out.customer_labels.push_back("u" + std::to_string(u));
  for (std::size_t i = 0; i < n; ++i) out.item_labels.push_back("i" + std::to_string(i));
  for (std::size_t p = 0; p < sizes.size(); ++p) out.provider_labels.push_back("p" + std::to_string(p));
  return out;
}

}  // namespace tfrom
