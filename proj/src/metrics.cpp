#include "tfrom/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfrom/error.hpp"

namespace tfrom {

double position_weight(std::size_t rank) {
  if (rank < 1) throw Error(ErrorCode::InvalidRank, "ranks are 1-based, got 0");
  return 1.0 / std::log2(static_cast<double>(rank) + 1.0);
}

double slot_weight_sum(std::size_t k) {
  double sum = 0.0;
  for (std::size_t rank = 1; rank <= k; ++rank) sum += position_weight(rank);
  return sum;
}

ExposureReport exposure(std::span<const RecommendationList> lists, const Catalog& catalog) {
  ExposureReport report{std::vector<double>(catalog.items(), 0.0),
                        std::vector<double>(catalog.providers(), 0.0)};
  for (const auto& list : lists) {
    for (std::size_t pos = 0; pos < list.items.size(); ++pos) {
      const ItemId item = list.items[pos];
      const double w = position_weight(pos + 1);
      report.per_item[item.index()] += w;
      report.per_provider[catalog.provider_of(item).index()] += w;
    }
  }
  return report;
}

double dcg(const PreferenceMatrix& preferences, CustomerId u, std::span<const ItemId> items) {
  double sum = 0.0;
  for (std::size_t pos = 0; pos < items.size(); ++pos) {
    sum += preferences.at(u, items[pos]) * position_weight(pos + 1);
  }
  return sum;
}

double ideal_dcg(const PreferenceMatrix& preferences, const RankedList& original, std::size_t k) {
  const std::size_t len = std::min(k, original.items.size());
  return dcg(preferences, original.owner, std::span<const ItemId>(original.items).first(len));
}

double ndcg(const PreferenceMatrix& preferences, const RecommendationList& list,
            const RankedList& original) {
  const double ideal = ideal_dcg(preferences, original, list.k());
  if (!(ideal > 0.0)) {
    throw Error(ErrorCode::ZeroIdealQuality, "customer " + std::to_string(list.owner.index()));
  }
  return dcg(preferences, list.owner, list.items) / ideal;
}

QualityReport quality(const PreferenceMatrix& preferences, std::span<const RecommendationList> lists,
                      std::span<const RankedList> originals) {
  QualityReport report;
  report.customers.reserve(lists.size());
  report.dcg.reserve(lists.size());
  report.idcg.reserve(lists.size());
  report.ndcg.reserve(lists.size());
  for (const auto& list : lists) {
    const auto& original = originals[list.owner.index()];
    const double ideal = ideal_dcg(preferences, original, list.k());
    if (!(ideal > 0.0)) {
      throw Error(ErrorCode::ZeroIdealQuality, "customer " + std::to_string(list.owner.index()));
    }
    const double gain = dcg(preferences, list.owner, list.items);
    report.customers.push_back(list.owner);
    report.dcg.push_back(gain);
    report.idcg.push_back(ideal);
    report.ndcg.push_back(gain / ideal);
  }
  return report;
}

double population_variance(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return acc / static_cast<double>(values.size());
}

double uniform_provider_fairness(const ExposureReport& report) {
  return population_variance(report.per_provider);
}

double per_item_provider_fairness(const ExposureReport& report, const Catalog& catalog) {
  std::vector<double> scaled(report.per_provider.size());
  for (std::size_t p = 0; p < scaled.size(); ++p) {
    scaled[p] = report.per_provider[p] / static_cast<double>(catalog.items_of(ProviderId(p)).size());
  }
  return population_variance(scaled);
}

namespace {

// Min-max scaling to [0, 1]; an all-equal vector maps to all ones.
bool normalize(std::span<const double> in, std::vector<double>& out) {
  const auto [lo, hi] = std::minmax_element(in.begin(), in.end());
  out.resize(in.size());
  if (!(*hi > *lo)) {
    std::fill(out.begin(), out.end(), 1.0);
    return true;
  }
  const double span = *hi - *lo;
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = (in[i] - *lo) / span;
  return false;
}

}  // namespace

RatioVariance exposure_relevance_ratio_variance(std::span<const double> exposure,
                                                std::span<const double> relevance) {
  RatioVariance result;
  if (exposure.size() != relevance.size()) {
    throw Error(ErrorCode::InvalidShape, "exposure and relevance differ in length");
  }
  if (exposure.size() < 2) return result;

  std::vector<double> e;
  std::vector<double> r;
  result.degenerate_exposure = normalize(exposure, e);
  result.degenerate_relevance = normalize(relevance, r);

  std::vector<double> ratios;
  ratios.reserve(e.size());
  for (std::size_t p = 0; p < e.size(); ++p) {
    if (r[p] > kRatioEpsilon) ratios.push_back(e[p] / r[p]);
  }
  result.included = ratios.size();
  result.variance = population_variance(ratios);
  return result;
}

double quality_weighted_provider_fairness(const ExposureReport& report,
                                          const PreferenceMatrix& preferences,
                                          const Catalog& catalog) {
  const auto relevance = provider_relevance(preferences, catalog);
  return exposure_relevance_ratio_variance(report.per_provider, relevance).variance;
}

double customer_fairness(const QualityReport& report) { return population_variance(report.ndcg); }

double total_quality(const QualityReport& report) {
  double sum = 0.0;
  for (double v : report.ndcg) sum += v;
  return sum;
}

}  // namespace tfrom
