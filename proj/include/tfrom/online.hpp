#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tfrom/instance.hpp"
#include "tfrom/selection.hpp"
#include "tfrom/targets.hpp"

namespace tfrom {

/// Cumulative bookkeeping for a stream of requests. Shared by TFROM-online
/// and by the baselines when they are replayed over a stream.
class OnlineState {
 public:
  OnlineState() = default;
  OnlineState(std::size_t customers, std::size_t providers);

  std::span<const double> exposure() const noexcept { return exposure_; }
  std::span<const double> avg_quality() const noexcept { return avg_quality_; }
  std::span<const std::size_t> rec_time() const noexcept { return rec_time_; }
  std::size_t requests() const noexcept { return requests_; }
  /// Sum of per-request NDCG over every request served.
  double quality_sum() const noexcept { return quality_sum_; }

  std::size_t customers() const noexcept { return avg_quality_.size(); }
  std::size_t providers() const noexcept { return exposure_.size(); }

  /// Folds one served list (whose exposure has not been counted yet) into the
  /// state.
  void record(const RecommendationList& list, double request_quality, const Catalog& catalog);

  nlohmann::json to_json() const;
  static OnlineState from_json(const nlohmann::json& j);

  friend bool operator==(const OnlineState&, const OnlineState&) = default;

 private:
  friend class OnlineRecommender;
  friend RecommendationList serve_request(OnlineState&, CustomerId, const Instance&,
                                          const RankedList&, std::size_t, const TargetShares&,
                                          std::vector<SelectionEvent>*);

  void finish_request(CustomerId u, double request_quality);

  std::vector<double> exposure_;
  std::vector<double> avg_quality_;
  std::vector<std::size_t> rec_time_;
  std::size_t requests_ = 0;
  double quality_sum_ = 0.0;
};

/// Serves one request from customer `u` and advances `state`.
///
/// The budget counts the incoming request, i.e. it is the exposure of
/// requests()+1 lists. A first pass fills ranks with the best remaining item
/// whose provider stays within its fair target; a second pass fills any
/// vacancy with the best remaining item regardless of provider. Optional
/// `events` receives one entry per placement.
RecommendationList serve_request(OnlineState& state, CustomerId u, const Instance& instance,
                                 const RankedList& original, std::size_t k,
                                 const TargetShares& shares,
                                 std::vector<SelectionEvent>* events = nullptr);

RecommendationList serve_request(OnlineState& state, CustomerId u, const Instance& instance,
                                 const RankedList& original, std::size_t k, FairnessMode mode);

/// Convenience wrapper that owns the per-instance precomputation.
class OnlineRecommender {
 public:
  OnlineRecommender(const Instance& instance, std::size_t k, FairnessMode mode);

  RecommendationList serve(CustomerId u, std::vector<SelectionEvent>* events = nullptr);

  const OnlineState& state() const noexcept { return state_; }
  void restore(OnlineState state);
  std::size_t k() const noexcept { return k_; }

 private:
  const Instance* instance_;
  std::vector<RankedList> originals_;
  TargetShares shares_;
  std::size_t k_;
  OnlineState state_;
};

}  // namespace tfrom
