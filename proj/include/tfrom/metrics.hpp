#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tfrom/instance.hpp"

namespace tfrom {

/// Attention credited to the item shown at 1-based position `rank`:
/// 1 / log2(rank + 1).
double position_weight(std::size_t rank);

/// Sum of position weights for ranks 1..k.
double slot_weight_sum(std::size_t k);

struct ExposureReport {
  std::vector<double> per_item;
  std::vector<double> per_provider;
};

ExposureReport exposure(std::span<const RecommendationList> lists, const Catalog& catalog);

/// Discounted cumulative gain of `items` for customer `u`. The first position
/// has weight 1, so it is effectively undiscounted.
double dcg(const PreferenceMatrix& preferences, CustomerId u, std::span<const ItemId> items);

/// DCG of the top-k prefix of the customer's original ranking.
double ideal_dcg(const PreferenceMatrix& preferences, const RankedList& original, std::size_t k);

double ndcg(const PreferenceMatrix& preferences, const RecommendationList& list,
            const RankedList& original);

/// Per-list quality. Entry j describes lists[j] (whose owner is customers[j]).
struct QualityReport {
  std::vector<CustomerId> customers;
  std::vector<double> dcg;
  std::vector<double> idcg;
  std::vector<double> ndcg;
};

/// `originals` is indexed by customer id.
QualityReport quality(const PreferenceMatrix& preferences, std::span<const RecommendationList> lists,
                      std::span<const RankedList> originals);

double population_variance(std::span<const double> values);

/// Variance of raw provider exposure.
double uniform_provider_fairness(const ExposureReport& report);

/// Supplementary: variance of exposure per offered item, e_p / |I_p|. This is
/// the quantity the uniform fairness definition equalizes; it is reported
/// alongside, not instead of, the raw variance.
double per_item_provider_fairness(const ExposureReport& report, const Catalog& catalog);

struct RatioVariance {
  double variance = 0.0;
  /// All exposures equal, so every normalized exposure was set to 1.
  bool degenerate_exposure = false;
  /// All relevance sums equal, so every normalized relevance was set to 1.
  bool degenerate_relevance = false;
  /// Providers whose normalized relevance exceeded the exclusion threshold.
  std::size_t included = 0;

  bool degenerate() const noexcept { return degenerate_exposure || degenerate_relevance; }
};

inline constexpr double kRatioEpsilon = 1e-12;

/// Min-max normalizes exposure and relevance independently to [0, 1] and
/// returns the population variance of their ratio over providers with
/// normalized relevance > kRatioEpsilon. Fewer than two providers gives 0.
RatioVariance exposure_relevance_ratio_variance(std::span<const double> exposure,
                                                std::span<const double> relevance);

double quality_weighted_provider_fairness(const ExposureReport& report,
                                          const PreferenceMatrix& preferences,
                                          const Catalog& catalog);

/// Variance of NDCG across customers.
double customer_fairness(const QualityReport& report);

double total_quality(const QualityReport& report);

}  // namespace tfrom
