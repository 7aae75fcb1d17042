#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tfrom/instance.hpp"
#include "tfrom/selection.hpp"
#include "tfrom/targets.hpp"

namespace tfrom {

struct SkippedSlot {
  CustomerId customer;
  std::size_t rank = 0;

  friend bool operator==(const SkippedSlot&, const SkippedSlot&) = default;
};

struct OfflineRun {
  std::vector<RecommendationList> lists;
  std::vector<double> exposure;   // per provider
  std::vector<double> quality;    // per customer, accumulated NDCG
  std::vector<SkippedSlot> skipped;
  FairTargets targets;
  std::vector<SelectionEvent> events;
};

/// Batch re-ranking of every customer's list under per-provider exposure
/// budgets.
///
/// Positions are filled one rank at a time across all customers. At rank 1
/// customers are visited in a seeded random order; afterwards in descending
/// order of the quality they have accumulated so far (ties: ascending id).
/// Each customer takes the best remaining item of their original ranking whose
/// provider can absorb the slot's exposure without passing its fair target;
/// otherwise the slot is left empty. Empty slots are then filled rank by rank,
/// customers ascending, with the remaining item whose provider currently has
/// the least exposure (ties: higher relevance, then lower item id).
///
/// `originals` is indexed by customer id.
OfflineRun tfrom_offline(const Instance& instance, std::span<const RankedList> originals,
                         std::size_t k, FairnessMode mode, std::uint64_t seed);

}  // namespace tfrom
