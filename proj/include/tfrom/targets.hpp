#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "tfrom/instance.hpp"

namespace tfrom {

enum class FairnessMode { Uniform, QualityWeighted };

std::string_view to_string(FairnessMode mode);
/// Accepts "uniform" and "quality-weighted".
std::optional<FairnessMode> parse_fairness_mode(std::string_view text);

struct FairTargets {
  double total = 0.0;
  std::vector<double> per_provider;
};

/// Exposure handed out when `customers` lists of length k are shown.
double total_exposure(std::size_t customers, std::size_t k);

/// Same budget measured in requests served so far; zero requests is allowed.
double online_total_exposure(std::size_t requests, std::size_t k);

/// Each provider's share of any exposure budget. Uniform shares follow the
/// provider's item count, quality-weighted shares follow the relevance its
/// items collect across all customers. Computed once per instance.
class TargetShares {
 public:
  TargetShares(FairnessMode mode, const Catalog& catalog, const PreferenceMatrix& preferences);

  FairnessMode mode() const noexcept { return mode_; }
  FairTargets at(double total) const;

 private:
  FairnessMode mode_;
  std::vector<double> weights_;
  double weight_sum_ = 0.0;
};

FairTargets fair_targets(FairnessMode mode, double total, const Catalog& catalog,
                         const PreferenceMatrix& preferences);

}  // namespace tfrom
