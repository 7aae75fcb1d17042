#include "tfrom/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tfrom/error.hpp"

namespace tfrom {

PreferenceMatrix::PreferenceMatrix(std::size_t customers, std::size_t items,
                                   std::vector<double> scores)
    : customers_(customers), items_(items), scores_(std::move(scores)) {
  if (customers_ == 0 || items_ == 0) {
    throw Error(ErrorCode::InvalidShape, "preference matrix must have at least one row and column");
  }
  if (scores_.size() != customers_ * items_) {
    throw Error(ErrorCode::InvalidShape, "expected " + std::to_string(customers_ * items_) +
                                             " scores, got " + std::to_string(scores_.size()));
  }
  for (std::size_t u = 0; u < customers_; ++u) {
    bool positive = false;
    for (std::size_t i = 0; i < items_; ++i) {
      const double v = scores_[u * items_ + i];
      const auto where = "customer " + std::to_string(u) + ", item " + std::to_string(i);
      if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteScore, where);
      if (v < 0.0) throw Error(ErrorCode::NegativeScore, where);
      positive = positive || v > 0.0;
    }
    if (!positive) {
      throw Error(ErrorCode::EmptyRow, "customer " + std::to_string(u) + " has no positive score");
    }
  }
}

Catalog::Catalog(std::span<const std::size_t> provider_labels) {
  labels_.assign(provider_labels.begin(), provider_labels.end());
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());

  items_of_.resize(labels_.size());
  provider_of_.reserve(provider_labels.size());
  for (std::size_t i = 0; i < provider_labels.size(); ++i) {
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), provider_labels[i]);
    const ProviderId p(static_cast<std::size_t>(it - labels_.begin()));
    provider_of_.push_back(p);
    items_of_[p.index()].push_back(ItemId(i));
  }
}

Instance build_instance(std::size_t customers, std::size_t items, std::vector<double> scores,
                        std::span<const std::size_t> provider_labels) {
  PreferenceMatrix preferences(customers, items, std::move(scores));
  if (provider_labels.size() != items) {
    throw Error(ErrorCode::InvalidShape, "expected one provider per item (" + std::to_string(items) +
                                             "), got " + std::to_string(provider_labels.size()));
  }
  return Instance{std::move(preferences), Catalog(provider_labels)};
}

Instance build_instance(const std::vector<std::vector<double>>& rows,
                        std::span<const std::size_t> provider_labels) {
  const std::size_t customers = rows.size();
  const std::size_t items = rows.empty() ? 0 : rows.front().size();
  std::vector<double> scores;
  scores.reserve(customers * items);
  for (const auto& row : rows) {
    if (row.size() != items) throw Error(ErrorCode::InvalidShape, "ragged preference rows");
    scores.insert(scores.end(), row.begin(), row.end());
  }
  return build_instance(customers, items, std::move(scores), provider_labels);
}

RankedList original_ranking(const PreferenceMatrix& preferences, CustomerId u) {
  if (!preferences.contains(u)) {
    throw Error(ErrorCode::UnknownCustomer, "customer " + std::to_string(u.index()));
  }
  const auto row = preferences.row(u);
  RankedList ranked{u, {}};
  ranked.items.reserve(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) ranked.items.emplace_back(i);
  std::stable_sort(ranked.items.begin(), ranked.items.end(),
                   [&](ItemId a, ItemId b) { return row[a.index()] > row[b.index()]; });
  return ranked;
}

std::vector<RankedList> original_rankings(const PreferenceMatrix& preferences) {
  std::vector<RankedList> out;
  out.reserve(preferences.customers());
  for (std::size_t u = 0; u < preferences.customers(); ++u) {
    out.push_back(original_ranking(preferences, CustomerId(u)));
  }
  return out;
}

std::vector<double> provider_relevance(const PreferenceMatrix& preferences, const Catalog& catalog) {
  std::vector<double> per_item(preferences.items(), 0.0);
  for (std::size_t u = 0; u < preferences.customers(); ++u) {
    const auto row = preferences.row(CustomerId(u));
    for (std::size_t i = 0; i < row.size(); ++i) per_item[i] += row[i];
  }
  std::vector<double> out(catalog.providers(), 0.0);
  for (std::size_t i = 0; i < per_item.size(); ++i) {
    out[catalog.provider_of(ItemId(i)).index()] += per_item[i];
  }
  return out;
}

void validate_list(const RecommendationList& list, const Instance& instance) {
  const std::size_t n = instance.items();
  if (!instance.preferences.contains(list.owner)) {
    throw Error(ErrorCode::UnknownCustomer, "customer " + std::to_string(list.owner.index()));
  }
  if (list.items.empty() || list.items.size() > n) {
    throw Error(ErrorCode::InvalidList, "list length " + std::to_string(list.items.size()) +
                                            " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<bool> seen(n, false);
  for (const ItemId item : list.items) {
    if (item.index() >= n) {
      throw Error(ErrorCode::InvalidList, "item " + std::to_string(item.index()) + " out of range");
    }
    if (seen[item.index()]) {
      throw Error(ErrorCode::InvalidList, "item " + std::to_string(item.index()) + " repeated");
    }
    seen[item.index()] = true;
  }
}

}  // namespace tfrom
