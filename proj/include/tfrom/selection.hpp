#pragma once

#include <cstddef>

#include "tfrom/ids.hpp"

namespace tfrom {

/// One placement made by a re-ranker. Both TFROM variants log these so runs
/// can be replayed and audited.
struct SelectionEvent {
  enum class Phase { Budgeted, Refill };

  Phase phase = Phase::Budgeted;
  std::size_t rank = 0;
  CustomerId customer;
  ItemId item;
  ProviderId provider;
  double exposure_before = 0.0;
  double weight = 0.0;
  double budget = 0.0;
};

/// Slack on the budget comparison, absorbing floating-point accumulation.
inline constexpr double kBudgetSlack = 1e-12;

}  // namespace tfrom
