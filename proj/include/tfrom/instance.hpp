#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tfrom/ids.hpp"

namespace tfrom {

/// Dense customers x items relevance grid. Every score is finite and
/// non-negative, and every customer has at least one positive score.
class PreferenceMatrix {
 public:
  /// Validates and takes ownership of a row-major grid of customers x items.
  PreferenceMatrix(std::size_t customers, std::size_t items, std::vector<double> scores);

  std::size_t customers() const noexcept { return customers_; }
  std::size_t items() const noexcept { return items_; }

  double at(CustomerId u, ItemId i) const { return scores_[u.index() * items_ + i.index()]; }
  std::span<const double> row(CustomerId u) const {
    return {scores_.data() + u.index() * items_, items_};
  }
  std::span<const double> data() const noexcept { return scores_; }

  bool contains(CustomerId u) const noexcept { return u.index() < customers_; }

 private:
  std::size_t customers_;
  std::size_t items_;
  std::vector<double> scores_;
};

/// Item <-> provider mapping. Provider ids are compacted to 0..l-1 in
/// ascending order of the raw labels they were built from; the raw labels are
/// kept for output.
class Catalog {
 public:
  explicit Catalog(std::span<const std::size_t> provider_labels);

  std::size_t items() const noexcept { return provider_of_.size(); }
  std::size_t providers() const noexcept { return items_of_.size(); }

  ProviderId provider_of(ItemId i) const { return provider_of_[i.index()]; }
  std::span<const ItemId> items_of(ProviderId p) const { return items_of_[p.index()]; }
  std::size_t label(ProviderId p) const { return labels_[p.index()]; }

 private:
  std::vector<ProviderId> provider_of_;
  std::vector<std::vector<ItemId>> items_of_;
  std::vector<std::size_t> labels_;
};

struct Instance {
  PreferenceMatrix preferences;
  Catalog catalog;

  std::size_t customers() const noexcept { return preferences.customers(); }
  std::size_t items() const noexcept { return preferences.items(); }
  std::size_t providers() const noexcept { return catalog.providers(); }
};

/// A customer's full item permutation, best first. Equal scores are ordered
/// by ascending item id.
struct RankedList {
  CustomerId owner;
  std::vector<ItemId> items;
};

/// The k items actually shown to one customer, in display order.
struct RecommendationList {
  CustomerId owner;
  std::vector<ItemId> items;

  std::size_t k() const noexcept { return items.size(); }
};

/// Builds a validated instance from a row-major grid and one provider label
/// per item. Labels need not be contiguous; they are compacted.
Instance build_instance(std::size_t customers, std::size_t items, std::vector<double> scores,
                        std::span<const std::size_t> provider_labels);
Instance build_instance(const std::vector<std::vector<double>>& rows,
                        std::span<const std::size_t> provider_labels);

RankedList original_ranking(const PreferenceMatrix& preferences, CustomerId u);
std::vector<RankedList> original_rankings(const PreferenceMatrix& preferences);

/// Sum over all customers and all of a provider's items of the relevance
/// score, one entry per provider.
std::vector<double> provider_relevance(const PreferenceMatrix& preferences, const Catalog& catalog);

/// Throws InvalidList unless `list` has k() in [1, n] distinct valid items and
/// a valid owner.
void validate_list(const RecommendationList& list, const Instance& instance);

}  // namespace tfrom
