#include "tfrom/offline.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "tfrom/error.hpp"
#include "tfrom/metrics.hpp"
#include "tfrom/random.hpp"

namespace tfrom {

namespace {

constexpr std::size_t kEmpty = std::numeric_limits<std::size_t>::max();

struct CustomerSlots {
  std::vector<std::size_t> chosen;  // item index per rank, kEmpty if unfilled
  std::vector<ItemId> pool;         // not yet recommended, original order
  double ideal = 0.0;
};

}  // namespace

OfflineRun tfrom_offline(const Instance& instance, std::span<const RankedList> originals,
                         std::size_t k, FairnessMode mode, std::uint64_t seed) {
  const std::size_t m = instance.customers();
  const std::size_t n = instance.items();
  const auto& prefs = instance.preferences;
  const auto& catalog = instance.catalog;

  if (k == 0) throw Error(ErrorCode::InvalidDimension, "k must be positive");
  if (n < k) {
    throw Error(ErrorCode::InsufficientItems,
                "k = " + std::to_string(k) + " exceeds " + std::to_string(n) + " items");
  }
  if (originals.size() != m) {
    throw Error(ErrorCode::InvalidShape, "need one original ranking per customer");
  }

  OfflineRun run;
  run.targets = fair_targets(mode, total_exposure(m, k), catalog, prefs);
  run.exposure.assign(catalog.providers(), 0.0);
  run.quality.assign(m, 0.0);

  std::vector<CustomerSlots> slots(m);
  for (std::size_t u = 0; u < m; ++u) {
    if (originals[u].owner.index() != u || originals[u].items.size() != n) {
      throw Error(ErrorCode::InvalidShape, "original ranking " + std::to_string(u) + " malformed");
    }
    slots[u].chosen.assign(k, kEmpty);
    slots[u].pool = originals[u].items;
    slots[u].ideal = ideal_dcg(prefs, originals[u], k);
  }

  const auto place = [&](SelectionEvent::Phase phase, std::size_t u, std::size_t rank,
                         std::size_t pool_pos) {
    auto& s = slots[u];
    const ItemId item = s.pool[pool_pos];
    const ProviderId p = catalog.provider_of(item);
    const double w = position_weight(rank);
    run.events.push_back({phase, rank, CustomerId(u), item, p, run.exposure[p.index()], w,
                          run.targets.per_provider[p.index()]});
    s.chosen[rank - 1] = item.index();
    run.exposure[p.index()] += w;
    run.quality[u] += prefs.at(CustomerId(u), item) * w / s.ideal;
    s.pool.erase(s.pool.begin() + static_cast<std::ptrdiff_t>(pool_pos));
  };

  // Budgeted pass, one rank at a time across all customers.
  std::vector<std::size_t> order;
  for (std::size_t rank = 1; rank <= k; ++rank) {
    if (rank == 1) {
      order = seeded_permutation(m, seed);
    } else {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return run.quality[a] > run.quality[b];
      });
    }
    const double w = position_weight(rank);
    for (const std::size_t u : order) {
      const auto& pool = slots[u].pool;
      std::optional<std::size_t> pick;
      for (std::size_t pos = 0; pos < pool.size(); ++pos) {
        const auto p = catalog.provider_of(pool[pos]).index();
        if (run.exposure[p] + w <= run.targets.per_provider[p] + kBudgetSlack) {
          pick = pos;
          break;
        }
      }
      if (pick) {
        place(SelectionEvent::Phase::Budgeted, u, rank, *pick);
      } else {
        run.skipped.push_back({CustomerId(u), rank});
      }
    }
  }

  // Refill pass: vacancies go to the least exposed provider's items.
  for (std::size_t rank = 1; rank <= k; ++rank) {
    for (std::size_t u = 0; u < m; ++u) {
      if (slots[u].chosen[rank - 1] != kEmpty) continue;
      const auto& pool = slots[u].pool;
      std::size_t best = 0;
      for (std::size_t pos = 1; pos < pool.size(); ++pos) {
        const double e = run.exposure[catalog.provider_of(pool[pos]).index()];
        const double best_e = run.exposure[catalog.provider_of(pool[best]).index()];
        if (e != best_e) {
          if (e < best_e) best = pos;
          continue;
        }
        const double v = prefs.at(CustomerId(u), pool[pos]);
        const double best_v = prefs.at(CustomerId(u), pool[best]);
        if (v > best_v || (v == best_v && pool[pos] < pool[best])) best = pos;
      }
      place(SelectionEvent::Phase::Refill, u, rank, best);
    }
  }

  run.lists.reserve(m);
  for (std::size_t u = 0; u < m; ++u) {
    RecommendationList list{CustomerId(u), {}};
    list.items.reserve(k);
    for (const std::size_t item : slots[u].chosen) list.items.emplace_back(item);
    run.lists.push_back(std::move(list));
  }
  return run;
}

}  // namespace tfrom
