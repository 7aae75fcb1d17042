#include "tfrom/online.hpp"

#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "tfrom/error.hpp"
#include "tfrom/metrics.hpp"

namespace tfrom {

OnlineState::OnlineState(std::size_t customers, std::size_t providers)
    : exposure_(providers, 0.0), avg_quality_(customers, 0.0), rec_time_(customers, 0) {}

void OnlineState::finish_request(CustomerId u, double request_quality) {
  auto& q = avg_quality_[u.index()];
  auto& times = rec_time_[u.index()];
  q = (q * static_cast<double>(times) + request_quality) / static_cast<double>(times + 1);
  ++times;
  ++requests_;
  quality_sum_ += request_quality;
}

void OnlineState::record(const RecommendationList& list, double request_quality,
                         const Catalog& catalog) {
  if (list.owner.index() >= customers()) {
    throw Error(ErrorCode::UnknownCustomer, "customer " + std::to_string(list.owner.index()));
  }
  for (std::size_t pos = 0; pos < list.items.size(); ++pos) {
    exposure_[catalog.provider_of(list.items[pos]).index()] += position_weight(pos + 1);
  }
  finish_request(list.owner, request_quality);
}

nlohmann::json OnlineState::to_json() const {
  return {{"exposure", exposure_},
          {"avg_quality", avg_quality_},
          {"rec_time", rec_time_},
          {"requests", requests_},
          {"quality_sum", quality_sum_}};
}

OnlineState OnlineState::from_json(const nlohmann::json& j) {
  OnlineState state;
  try {
    j.at("exposure").get_to(state.exposure_);
    j.at("avg_quality").get_to(state.avg_quality_);
    j.at("rec_time").get_to(state.rec_time_);
    j.at("requests").get_to(state.requests_);
    j.at("quality_sum").get_to(state.quality_sum_);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("online state: ") + e.what());
  }
  if (state.avg_quality_.size() != state.rec_time_.size()) {
    throw Error(ErrorCode::ParseError, "online state: customer vectors differ in length");
  }
  std::size_t served = 0;
  for (auto t : state.rec_time_) served += t;
  if (served != state.requests_) {
    throw Error(ErrorCode::ParseError, "online state: request count does not match service counts");
  }
  return state;
}

RecommendationList serve_request(OnlineState& state, CustomerId u, const Instance& instance,
                                 const RankedList& original, std::size_t k,
                                 const TargetShares& shares, std::vector<SelectionEvent>* events) {
  const auto& prefs = instance.preferences;
  const auto& catalog = instance.catalog;
  if (!prefs.contains(u) || u.index() >= state.customers()) {
    throw Error(ErrorCode::UnknownCustomer, "customer " + std::to_string(u.index()));
  }
  if (k == 0) throw Error(ErrorCode::InvalidDimension, "k must be positive");
  if (instance.items() < k) {
    throw Error(ErrorCode::InsufficientItems, "k = " + std::to_string(k) + " exceeds " +
                                                  std::to_string(instance.items()) + " items");
  }
  if (state.providers() != catalog.providers() || original.owner != u) {
    throw Error(ErrorCode::InvalidShape, "state or ranking does not belong to this request");
  }

  const FairTargets targets = shares.at(online_total_exposure(state.requests() + 1, k));
  const double ideal = ideal_dcg(prefs, original, k);

  constexpr std::size_t kEmpty = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> chosen(k, kEmpty);
  std::vector<ItemId> pool = original.items;
  double request_quality = 0.0;

  const auto place = [&](SelectionEvent::Phase phase, std::size_t rank, std::size_t pool_pos) {
    const ItemId item = pool[pool_pos];
    const ProviderId p = catalog.provider_of(item);
    const double w = position_weight(rank);
    if (events != nullptr) {
      events->push_back({phase, rank, u, item, p, state.exposure_[p.index()], w,
                         targets.per_provider[p.index()]});
    }
    chosen[rank - 1] = item.index();
    state.exposure_[p.index()] += w;
    request_quality += prefs.at(u, item) * w / ideal;
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pool_pos));
  };

  for (std::size_t rank = 1; rank <= k; ++rank) {
    const double w = position_weight(rank);
    for (std::size_t pos = 0; pos < pool.size(); ++pos) {
      const auto p = catalog.provider_of(pool[pos]).index();
      if (state.exposure_[p] + w <= targets.per_provider[p] + kBudgetSlack) {
        place(SelectionEvent::Phase::Budgeted, rank, pos);
        break;
      }
    }
  }
  for (std::size_t rank = 1; rank <= k; ++rank) {
    if (chosen[rank - 1] == kEmpty) place(SelectionEvent::Phase::Refill, rank, 0);
  }

  state.finish_request(u, request_quality);

  RecommendationList list{u, {}};
  list.items.reserve(k);
  for (const std::size_t item : chosen) list.items.emplace_back(item);
  return list;
}

RecommendationList serve_request(OnlineState& state, CustomerId u, const Instance& instance,
                                 const RankedList& original, std::size_t k, FairnessMode mode) {
  return serve_request(state, u, instance, original, k,
                       TargetShares(mode, instance.catalog, instance.preferences));
}

OnlineRecommender::OnlineRecommender(const Instance& instance, std::size_t k, FairnessMode mode)
    : instance_(&instance),
      originals_(original_rankings(instance.preferences)),
      shares_(mode, instance.catalog, instance.preferences),
      k_(k),
      state_(instance.customers(), instance.providers()) {}

RecommendationList OnlineRecommender::serve(CustomerId u, std::vector<SelectionEvent>* events) {
  if (u.index() >= originals_.size()) {
    throw Error(ErrorCode::UnknownCustomer, "customer " + std::to_string(u.index()));
  }
  return serve_request(state_, u, *instance_, originals_[u.index()], k_, shares_, events);
}

void OnlineRecommender::restore(OnlineState state) {
  if (state.customers() != instance_->customers() || state.providers() != instance_->providers()) {
    throw Error(ErrorCode::InvalidShape, "snapshot does not match this instance");
  }
  state_ = std::move(state);
}

}  // namespace tfrom
