#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tfrom/io.hpp"

namespace tfrom {

enum class ScoreDistribution { Uniform, Exponential };

std::optional<ScoreDistribution> parse_score_distribution(std::string_view text);
std::string_view to_string(ScoreDistribution dist);

struct SyntheticSpec {
  std::size_t customers = 200;
  std::size_t items = 500;
  std::size_t providers = 20;
  ScoreDistribution distribution = ScoreDistribution::Uniform;
  /// Exponent of the power law provider sizes follow; 0 gives equal sizes.
  double provider_size_skew = 0.1;
  std::uint64_t seed = 42;
};

/// Provider sizes: every provider gets one item, the remaining items are
/// split in proportion to rank^-skew with ranks shuffled across providers.
std::vector<std::size_t> synthetic_provider_sizes(const SyntheticSpec& spec);

LoadedInstance generate_synthetic(const SyntheticSpec& spec);

}  // namespace tfrom
