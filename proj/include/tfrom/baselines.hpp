#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "tfrom/instance.hpp"

namespace tfrom {

RecommendationList top_k(const RankedList& original, std::size_t k);

/// k distinct items drawn uniformly without replacement, kept in draw order.
RecommendationList all_random(const RankedList& original, std::size_t k, std::uint64_t seed);

/// For each rank, picks the provider with the least exposure in `ledger` that
/// still has an unused item for this customer (ties: lower provider id), and
/// takes that provider's most relevant remaining item (ties: lower item id).
/// `ledger` is per provider and is updated in place.
RecommendationList minimum_exposure(const RankedList& original, const PreferenceMatrix& preferences,
                                    const Catalog& catalog, std::span<double> ledger, std::size_t k);

}  // namespace tfrom
