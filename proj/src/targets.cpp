#include "tfrom/targets.hpp"

#include <string>

#include "tfrom/error.hpp"
#include "tfrom/metrics.hpp"

namespace tfrom {

std::string_view to_string(FairnessMode mode) {
  return mode == FairnessMode::Uniform ? "uniform" : "quality-weighted";
}

std::optional<FairnessMode> parse_fairness_mode(std::string_view text) {
  if (text == "uniform") return FairnessMode::Uniform;
  if (text == "quality-weighted") return FairnessMode::QualityWeighted;
  return std::nullopt;
}

double total_exposure(std::size_t customers, std::size_t k) {
  if (customers == 0 || k == 0) {
    throw Error(ErrorCode::InvalidDimension, "customers and k must be positive (got " +
                                                 std::to_string(customers) + ", " +
                                                 std::to_string(k) + ")");
  }
  return static_cast<double>(customers) * slot_weight_sum(k);
}

double online_total_exposure(std::size_t requests, std::size_t k) {
  return static_cast<double>(requests) * slot_weight_sum(k);
}

TargetShares::TargetShares(FairnessMode mode, const Catalog& catalog,
                           const PreferenceMatrix& preferences)
    : mode_(mode) {
  if (mode == FairnessMode::Uniform) {
    weights_.resize(catalog.providers());
    for (std::size_t p = 0; p < weights_.size(); ++p) {
      weights_[p] = static_cast<double>(catalog.items_of(ProviderId(p)).size());
    }
  } else {
    weights_ = provider_relevance(preferences, catalog);
  }
  for (double w : weights_) weight_sum_ += w;
  if (!(weight_sum_ > 0.0)) {
    throw Error(ErrorCode::ZeroTotalRelevance, "no provider carries any relevance");
  }
}

FairTargets TargetShares::at(double total) const {
  if (total < 0.0) throw Error(ErrorCode::InvalidDimension, "negative exposure budget");
  FairTargets targets{total, std::vector<double>(weights_.size())};
  for (std::size_t p = 0; p < weights_.size(); ++p) {
    targets.per_provider[p] = total * weights_[p] / weight_sum_;
  }
  return targets;
}

FairTargets fair_targets(FairnessMode mode, double total, const Catalog& catalog,
                         const PreferenceMatrix& preferences) {
  return TargetShares(mode, catalog, preferences).at(total);
}

}  // namespace tfrom
