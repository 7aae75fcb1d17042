#include "tfrom/baselines.hpp"

#include <string>

#include "tfrom/error.hpp"
#include "tfrom/metrics.hpp"
#include "tfrom/random.hpp"

namespace tfrom {

namespace {

void require_items(const RankedList& original, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidDimension, "k must be positive");
  if (original.items.size() < k) {
    throw Error(ErrorCode::InsufficientItems, "k = " + std::to_string(k) + " exceeds " +
                                                  std::to_string(original.items.size()) + " items");
  }
}

}  // namespace

RecommendationList top_k(const RankedList& original, std::size_t k) {
  require_items(original, k);
  return {original.owner, {original.items.begin(), original.items.begin() + static_cast<std::ptrdiff_t>(k)}};
}

RecommendationList all_random(const RankedList& original, std::size_t k, std::uint64_t seed) {
  require_items(original, k);
  std::vector<ItemId> pool = original.items;
  Rng rng(seed);
  RecommendationList list{original.owner, {}};
  list.items.reserve(k);
  for (std::size_t drawn = 0; drawn < k; ++drawn) {
    const auto j = drawn + static_cast<std::size_t>(bounded(rng, pool.size() - drawn));
    std::swap(pool[drawn], pool[j]);
    list.items.push_back(pool[drawn]);
  }
  return list;
}

RecommendationList minimum_exposure(const RankedList& original, const PreferenceMatrix& preferences,
                                    const Catalog& catalog, std::span<double> ledger, std::size_t k) {
  require_items(original, k);
  if (!preferences.contains(original.owner) || original.items.size() != preferences.items()) {
    throw Error(ErrorCode::UnknownCustomer, "ranking does not belong to this instance");
  }
  if (ledger.size() != catalog.providers()) {
    throw Error(ErrorCode::InvalidShape, "ledger must have one entry per provider");
  }
  // The original ranking is already ordered by relevance with ascending-id
  // ties, so each provider's best remaining item is the first unused one of
  // that provider along it.
  const std::size_t l = catalog.providers();
  std::vector<std::vector<ItemId>> queue(l);
  for (const ItemId item : original.items) queue[catalog.provider_of(item).index()].push_back(item);
  std::vector<std::size_t> head(l, 0);

  RecommendationList list{original.owner, {}};
  list.items.reserve(k);
  for (std::size_t rank = 1; rank <= k; ++rank) {
    std::size_t best = l;
    for (std::size_t p = 0; p < l; ++p) {
      if (head[p] == queue[p].size()) continue;
      if (best == l || ledger[p] < ledger[best]) best = p;
    }
    list.items.push_back(queue[best][head[best]++]);
    ledger[best] += position_weight(rank);
  }
  return list;
}

}  // namespace tfrom
