#include "tfrom/experiment.hpp"

#include <sstream>
#include <string>

#include "tfrom/baselines.hpp"
#include "tfrom/error.hpp"
#include "tfrom/io.hpp"
#include "tfrom/metrics.hpp"
#include "tfrom/offline.hpp"
#include "tfrom/online.hpp"
#include "tfrom/random.hpp"

namespace tfrom {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Tfrom: return "tfrom";
    case Algorithm::TopK: return "topk";
    case Algorithm::Random: return "random";
    case Algorithm::MinExposure: return "minexp";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  for (auto a : {Algorithm::Tfrom, Algorithm::TopK, Algorithm::Random, Algorithm::MinExposure}) {
    if (text == to_string(a)) return a;
  }
  return std::nullopt;
}

void validate(const ExperimentConfig& config, const Instance& instance) {
  const auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidConfig, why); };
  if (config.algorithms.empty()) fail("no algorithms selected");
  if (config.ks.empty()) fail("no k values given");
  for (auto k : config.ks) {
    if (k == 0 || k > instance.items()) {
      fail("k = " + std::to_string(k) + " outside [1, " + std::to_string(instance.items()) + "]");
    }
  }
  if (config.stream_multiplier == 0) fail("stream multiplier must be >= 1");
  if (config.scenario == Scenario::Online && config.ks.size() != 1) {
    fail("online runs take exactly one k value");
  }
}

namespace {

struct MetricContext {
  const Instance& instance;
  std::vector<double> relevance;

  explicit MetricContext(const Instance& inst)
      : instance(inst), relevance(provider_relevance(inst.preferences, inst.catalog)) {}

  void fill_exposure(MetricRow& row, const ExposureReport& report) const {
    row.exposure_variance = uniform_provider_fairness(report);
    row.qw_ratio_variance = exposure_relevance_ratio_variance(report.per_provider, relevance).variance;
    row.exposure_per_item_variance = per_item_provider_fairness(report, instance.catalog);
  }
};

MetricRow offline_row(const MetricContext& ctx, std::span<const RankedList> originals,
                      std::span<const RecommendationList> lists, std::size_t step,
                      Algorithm algorithm) {
  MetricRow row;
  row.step = step;
  row.algorithm = algorithm;
  const auto q = quality(ctx.instance.preferences, lists, originals);
  row.total_quality = total_quality(q);
  row.ndcg_variance = customer_fairness(q);

  std::vector<double> all(ctx.instance.customers(), 0.0);
  for (std::size_t j = 0; j < q.customers.size(); ++j) all[q.customers[j].index()] = q.ndcg[j];
  row.ndcg_variance_all = population_variance(all);

  ctx.fill_exposure(row, exposure(lists, ctx.instance.catalog));
  return row;
}

MetricRow online_row(const MetricContext& ctx, const OnlineState& state, Algorithm algorithm) {
  MetricRow row;
  row.step = state.requests();
  row.algorithm = algorithm;
  row.total_quality = state.quality_sum();

  std::vector<double> served;
  for (std::size_t u = 0; u < state.customers(); ++u) {
    if (state.rec_time()[u] > 0) served.push_back(state.avg_quality()[u]);
  }
  row.ndcg_variance = population_variance(served);
  row.ndcg_variance_all = population_variance(state.avg_quality());

  ExposureReport report;
  report.per_provider.assign(state.exposure().begin(), state.exposure().end());
  ctx.fill_exposure(row, report);
  return row;
}

}  // namespace

MetricRow offline_metrics(const Instance& instance, std::span<const RankedList> originals,
                          std::span<const RecommendationList> lists, std::size_t step,
                          Algorithm algorithm) {
  return offline_row(MetricContext(instance), originals, lists, step, algorithm);
}

OfflineSweep run_offline_sweep(const ExperimentConfig& config, const Instance& instance) {
  validate(config, instance);
  const MetricContext ctx(instance);
  const auto originals = original_rankings(instance.preferences);
  const std::size_t m = instance.customers();

  OfflineSweep sweep;
  for (const std::size_t k : config.ks) {
    for (const Algorithm algorithm : config.algorithms) {
      std::vector<RecommendationList> lists;
      lists.reserve(m);
      switch (algorithm) {
        case Algorithm::Tfrom:
          lists = tfrom_offline(instance, originals, k, config.fairness, config.seed).lists;
          break;
        case Algorithm::TopK:
          for (const auto& original : originals) lists.push_back(top_k(original, k));
          break;
        case Algorithm::Random:
          for (std::size_t u = 0; u < m; ++u) {
            lists.push_back(all_random(originals[u], k, derive_seed(config.seed, k, u)));
          }
          break;
        case Algorithm::MinExposure: {
          std::vector<double> ledger(instance.providers(), 0.0);
          for (const auto& original : originals) {
            lists.push_back(minimum_exposure(original, instance.preferences, instance.catalog, ledger, k));
          }
          break;
        }
      }
      sweep.trace.rows.push_back(offline_row(ctx, originals, lists, k, algorithm));
      sweep.cells.push_back({k, algorithm, std::move(lists)});
    }
  }
  return sweep;
}

std::vector<CustomerId> request_stream(std::size_t customers, std::size_t multiplier,
                                       std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x73747265616dULL));
  std::vector<CustomerId> stream;
  stream.reserve(customers * multiplier);
  for (std::size_t j = 0; j < customers * multiplier; ++j) {
    stream.emplace_back(static_cast<std::size_t>(bounded(rng, customers)));
  }
  return stream;
}

OnlineStream run_online_stream(const ExperimentConfig& config, const Instance& instance) {
  ExperimentConfig online = config;
  online.scenario = Scenario::Online;
  validate(online, instance);

  const MetricContext ctx(instance);
  const auto originals = original_rankings(instance.preferences);
  const std::size_t k = config.ks.front();
  const std::size_t every = config.trace_every == 0 ? instance.customers() : config.trace_every;

  OnlineStream result;
  result.requests = request_stream(instance.customers(), config.stream_multiplier, config.seed);
  const TargetShares shares(config.fairness, instance.catalog, instance.preferences);

  for (const Algorithm algorithm : config.algorithms) {
    OnlineState state(instance.customers(), instance.providers());
    std::vector<double> ledger(instance.providers(), 0.0);
    auto& served = result.served.emplace_back();
    served.reserve(result.requests.size());

    for (std::size_t j = 0; j < result.requests.size(); ++j) {
      const CustomerId u = result.requests[j];
      const auto& original = originals[u.index()];
      RecommendationList list;
      if (algorithm == Algorithm::Tfrom) {
        list = serve_request(state, u, instance, original, k, shares);
      } else {
        switch (algorithm) {
          case Algorithm::TopK: list = top_k(original, k); break;
          case Algorithm::Random: list = all_random(original, k, derive_seed(config.seed, j, 1)); break;
          default:
            list = minimum_exposure(original, instance.preferences, instance.catalog, ledger, k);
            break;
        }
        state.record(list, ndcg(instance.preferences, list, original), instance.catalog);
      }
      served.push_back({j, std::move(list)});

      const bool last = j + 1 == result.requests.size();
      if ((j + 1) % every == 0 || last) result.trace.rows.push_back(online_row(ctx, state, algorithm));
    }
  }
  return result;
}

std::string trace_csv(const MetricTrace& trace, Scenario scenario) {
  std::ostringstream out;
  out << (scenario == Scenario::Offline ? "k" : "step")
      << ",algorithm,total_quality,ndcg_variance,ndcg_variance_all,exposure_variance,"
         "qw_ratio_variance,exposure_per_item_variance\n";
  for (const auto& r : trace.rows) {
    out << r.step << ',' << to_string(r.algorithm) << ',' << format_double(r.total_quality) << ','
        << format_double(r.ndcg_variance) << ',' << format_double(r.ndcg_variance_all) << ','
        << format_double(r.exposure_variance) << ',' << format_double(r.qw_ratio_variance) << ','
        << format_double(r.exposure_per_item_variance) << '\n';
  }
  return out.str();
}

}  // namespace tfrom
