#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tfrom/instance.hpp"
#include "tfrom/targets.hpp"

namespace tfrom {

enum class Scenario { Offline, Online };
enum class Algorithm { Tfrom, TopK, Random, MinExposure };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view text);

struct ExperimentConfig {
  Scenario scenario = Scenario::Offline;
  FairnessMode fairness = FairnessMode::Uniform;
  std::vector<Algorithm> algorithms{Algorithm::Tfrom, Algorithm::TopK};
  std::vector<std::size_t> ks{10};
  std::uint64_t seed = 42;
  std::size_t stream_multiplier = 10;
  /// Requests between online trace rows; 0 means one row per `customers`
  /// requests.
  std::size_t trace_every = 0;
};

/// Throws InvalidConfig if the configuration cannot run on `instance`.
void validate(const ExperimentConfig& config, const Instance& instance);

struct MetricRow {
  std::size_t step = 0;  // k for offline sweeps, requests served for streams
  Algorithm algorithm = Algorithm::Tfrom;
  double total_quality = 0.0;
  /// Over customers served at least once (all customers offline).
  double ndcg_variance = 0.0;
  /// Over all customers, unserved ones counting as quality 0.
  double ndcg_variance_all = 0.0;
  double exposure_variance = 0.0;
  double qw_ratio_variance = 0.0;
  double exposure_per_item_variance = 0.0;
};

struct MetricTrace {
  std::vector<MetricRow> rows;
};

struct OfflineCell {
  std::size_t k = 0;
  Algorithm algorithm = Algorithm::Tfrom;
  std::vector<RecommendationList> lists;
};

struct OfflineSweep {
  MetricTrace trace;
  std::vector<OfflineCell> cells;  // same order as trace rows
};

OfflineSweep run_offline_sweep(const ExperimentConfig& config, const Instance& instance);

struct ServedRequest {
  std::size_t request = 0;
  RecommendationList list;
};

struct OnlineStream {
  MetricTrace trace;
  std::vector<CustomerId> requests;
  /// Served lists per algorithm, in config.algorithms order.
  std::vector<std::vector<ServedRequest>> served;
};

/// Uniform-with-replacement customer sequence of length multiplier * m.
std::vector<CustomerId> request_stream(std::size_t customers, std::size_t multiplier,
                                       std::uint64_t seed);

OnlineStream run_online_stream(const ExperimentConfig& config, const Instance& instance);

/// Metrics for an offline set of lists (one per customer that appears).
MetricRow offline_metrics(const Instance& instance, std::span<const RankedList> originals,
                          std::span<const RecommendationList> lists, std::size_t step,
                          Algorithm algorithm);

std::string trace_csv(const MetricTrace& trace, Scenario scenario);

}  // namespace tfrom
