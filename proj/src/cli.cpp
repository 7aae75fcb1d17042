#include "tfrom/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tfrom/error.hpp"
#include "tfrom/experiment.hpp"
#include "tfrom/io.hpp"
#include "tfrom/metrics.hpp"
#include "tfrom/online.hpp"
#include "tfrom/synthetic.hpp"

namespace tfrom {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunFlags {
  std::string preferences;
  std::string providers;
  std::string fairness = "uniform";
  std::string algorithms = "tfrom,topk";
  std::string ks = "10";
  std::uint64_t seed = 42;
  std::size_t stream_multiplier = 10;
  std::size_t trace_every = 0;
  std::string recommendations;
  std::string out = "out";
};

struct GenFlags {
  std::size_t customers = 200;
  std::size_t items = 500;
  std::size_t providers = 20;
  double skew = 0.1;
  std::string distribution = "uniform";
  std::uint64_t seed = 42;
  std::string out = "out";
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  for (auto& field : split_fields(text, ',')) {
    if (!field.empty()) out.push_back(field);
  }
  return out;
}

ExperimentConfig make_config(const RunFlags& flags, Scenario scenario) {
  ExperimentConfig config;
  config.scenario = scenario;
  const auto mode = parse_fairness_mode(flags.fairness);
  if (!mode) throw Error(ErrorCode::InvalidConfig, "unknown fairness mode '" + flags.fairness + "'");
  config.fairness = *mode;

  config.algorithms.clear();
  for (const auto& name : split_list(flags.algorithms)) {
    const auto a = parse_algorithm(name);
    if (!a) throw Error(ErrorCode::InvalidConfig, "unknown algorithm '" + name + "'");
    config.algorithms.push_back(*a);
  }
  config.ks.clear();
  for (const auto& text : split_list(flags.ks)) {
    std::size_t used = 0;
    unsigned long long k = 0;
    try {
      k = std::stoull(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.front() == '-') {
      throw Error(ErrorCode::InvalidConfig, "bad k value '" + text + "'");
    }
    config.ks.push_back(static_cast<std::size_t>(k));
  }
  config.seed = flags.seed;
  config.stream_multiplier = flags.stream_multiplier;
  config.trace_every = flags.trace_every;
  return config;
}

json config_json(const ExperimentConfig& config, const RunFlags& flags) {
  json algorithms = json::array();
  for (auto a : config.algorithms) algorithms.push_back(std::string(to_string(a)));
  return {{"scenario", config.scenario == Scenario::Offline ? "offline" : "online"},
          {"fairness", std::string(to_string(config.fairness))},
          {"algorithms", algorithms},
          {"k", config.ks},
          {"seed", config.seed},
          {"stream_multiplier", config.stream_multiplier},
          {"trace_every", config.trace_every},
          {"preferences", flags.preferences},
          {"providers", flags.providers}};
}

json row_json(const MetricRow& row, const char* step_name, bool with_algorithm) {
  json j = {{step_name, row.step},
            {"total_quality", row.total_quality},
            {"ndcg_variance", row.ndcg_variance},
            {"ndcg_variance_all", row.ndcg_variance_all},
            {"exposure_variance", row.exposure_variance},
            {"qw_ratio_variance", row.qw_ratio_variance},
            {"exposure_per_item_variance", row.exposure_per_item_variance}};
  if (with_algorithm) j["algorithm"] = std::string(to_string(row.algorithm));
  return j;
}

json instance_json(const Instance& instance) {
  return {{"customers", instance.customers()},
          {"items", instance.items()},
          {"providers", instance.providers()}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failure on " + path.string());
}

void prepare_out(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

void append_list(std::ostringstream& out, const LoadedInstance& loaded,
                 const RecommendationList& list, const std::string& prefix) {
  const auto& inst = loaded.instance;
  for (std::size_t pos = 0; pos < list.items.size(); ++pos) {
    const ItemId item = list.items[pos];
    out << prefix << loaded.customer_labels[list.owner.index()] << ',' << pos + 1 << ','
        << loaded.item_labels[item.index()] << ','
        << loaded.provider_labels[inst.catalog.provider_of(item).index()] << ','
        << format_double(inst.preferences.at(list.owner, item)) << '\n';
  }
}

std::string offline_recommendations(const LoadedInstance& loaded,
                                    std::span<const RecommendationList> lists) {
  std::ostringstream out;
  out << "customer,rank,item,provider,score\n";
  for (const auto& list : lists) append_list(out, loaded, list, "");
  return out.str();
}

std::string online_recommendations(const LoadedInstance& loaded,
                                   std::span<const ServedRequest> served) {
  std::ostringstream out;
  out << "request,customer,rank,item,provider,score\n";
  for (const auto& s : served) append_list(out, loaded, s.list, std::to_string(s.request) + ",");
  return out.str();
}

LoadedInstance load(const RunFlags& flags, std::ostream& err) {
  auto loaded = load_instance(flags.preferences, flags.providers);
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
  return loaded;
}

int cmd_gen(const GenFlags& flags) {
  SyntheticSpec spec;
  spec.customers = flags.customers;
  spec.items = flags.items;
  spec.providers = flags.providers;
  spec.provider_size_skew = flags.skew;
  spec.seed = flags.seed;
  const auto dist = parse_score_distribution(flags.distribution);
  if (!dist) throw Error(ErrorCode::InvalidConfig, "unknown distribution '" + flags.distribution + "'");
  spec.distribution = *dist;

  const auto loaded = generate_synthetic(spec);
  const fs::path dir(flags.out);
  prepare_out(dir);
  write_instance(loaded, dir / "preferences.csv", dir / "providers.csv");
  return 0;
}

int cmd_offline(const RunFlags& flags, std::ostream& err) {
  const auto loaded = load(flags, err);
  const auto config = make_config(flags, Scenario::Offline);
  const auto sweep = run_offline_sweep(config, loaded.instance);

  const fs::path dir(flags.out);
  prepare_out(dir);
  write_text(dir / "trace.csv", trace_csv(sweep.trace, Scenario::Offline));

  // recommendations.csv holds the first algorithm at the last k; every cell
  // also gets its own file.
  const OfflineCell* primary = nullptr;
  for (const auto& cell : sweep.cells) {
    write_text(dir / ("recommendations_" + std::string(to_string(cell.algorithm)) + "_k" +
                      std::to_string(cell.k) + ".csv"),
               offline_recommendations(loaded, cell.lists));
    if (cell.algorithm == config.algorithms.front() && cell.k == config.ks.back()) primary = &cell;
  }
  write_text(dir / "recommendations.csv", offline_recommendations(loaded, primary->lists));

  json results = json::array();
  for (const auto& row : sweep.trace.rows) results.push_back(row_json(row, "k", true));
  const json summary = {{"command", "offline"},
                        {"config", config_json(config, flags)},
                        {"instance", instance_json(loaded.instance)},
                        {"results", results}};
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

int cmd_online(const RunFlags& flags, std::ostream& err) {
  const auto loaded = load(flags, err);
  const auto config = make_config(flags, Scenario::Online);
  const auto stream = run_online_stream(config, loaded.instance);

  const fs::path dir(flags.out);
  prepare_out(dir);
  write_text(dir / "trace.csv", trace_csv(stream.trace, Scenario::Online));
  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    const auto text = online_recommendations(loaded, stream.served[a]);
    write_text(dir / ("recommendations_" + std::string(to_string(config.algorithms[a])) + ".csv"), text);
    if (a == 0) write_text(dir / "recommendations.csv", text);
  }

  // Final row per algorithm.
  std::map<std::string, json> last;
  for (const auto& row : stream.trace.rows) last[std::string(to_string(row.algorithm))] = row_json(row, "step", true);
  json results = json::array();
  for (auto a : config.algorithms) results.push_back(last.at(std::string(to_string(a))));
  const json summary = {{"command", "online"},
                        {"config", config_json(config, flags)},
                        {"instance", instance_json(loaded.instance)},
                        {"requests", stream.requests.size()},
                        {"results", results}};
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

int cmd_metrics(const RunFlags& flags, std::ostream& err) {
  const auto loaded = load(flags, err);
  const auto& inst = loaded.instance;
  const fs::path recs = flags.recommendations.empty() ? fs::path(flags.out) / "recommendations.csv"
                                                      : fs::path(flags.recommendations);

  std::unordered_map<std::string, std::size_t> customer_index;
  std::unordered_map<std::string, std::size_t> item_index;
  for (std::size_t u = 0; u < loaded.customer_labels.size(); ++u) customer_index[loaded.customer_labels[u]] = u;
  for (std::size_t i = 0; i < loaded.item_labels.size(); ++i) item_index[loaded.item_labels[i]] = i;

  std::ifstream in(recs);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + recs.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, recs.string() + ": missing header");
  const auto header = split_fields(line, ',');
  const bool stream = !header.empty() && header.front() == "request";
  const std::size_t base = stream ? 1 : 0;

  // Keyed by request (stream) or customer (batch); each value is the list
  // under construction.
  std::map<std::size_t, RecommendationList> lists;
  std::size_t line_no = 1;
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError, recs.string() + ":" + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    const auto f = split_fields(line, ',');
    if (f.size() < base + 3) fail("too few fields");
    const auto cu = customer_index.find(f[base]);
    if (cu == customer_index.end()) fail("unknown customer '" + f[base] + "'");
    const auto it = item_index.find(f[base + 2]);
    if (it == item_index.end()) fail("unknown item '" + f[base + 2] + "'");
    std::size_t rank = 0;
    std::size_t key = cu->second;
    try {
      rank = std::stoull(f[base + 1]);
      if (stream) key = std::stoull(f[0]);
    } catch (const std::exception&) {
      fail("bad rank or request number");
    }
    auto& list = lists[key];
    if (!list.items.empty() && list.owner.index() != cu->second) fail("request spans two customers");
    list.owner = CustomerId(cu->second);
    if (rank != list.items.size() + 1) fail("ranks must be consecutive starting at 1");
    list.items.emplace_back(it->second);
  }
  if (lists.empty()) throw Error(ErrorCode::ParseError, recs.string() + ": no recommendations");
  std::vector<RecommendationList> flat;
  for (auto& [key, list] : lists) {
    validate_list(list, inst);
    flat.push_back(std::move(list));
  }

  const auto originals = original_rankings(inst.preferences);
  MetricRow row;
  if (stream) {
    OnlineState state(inst.customers(), inst.providers());
    for (const auto& list : flat) {
      state.record(list, ndcg(inst.preferences, list, originals[list.owner.index()]), inst.catalog);
    }
    std::vector<double> served;
    for (std::size_t u = 0; u < state.customers(); ++u) {
      if (state.rec_time()[u] > 0) served.push_back(state.avg_quality()[u]);
    }
    row.step = state.requests();
    row.total_quality = state.quality_sum();
    row.ndcg_variance = population_variance(served);
    row.ndcg_variance_all = population_variance(state.avg_quality());
    ExposureReport report{{}, {state.exposure().begin(), state.exposure().end()}};
    row.exposure_variance = uniform_provider_fairness(report);
    row.qw_ratio_variance = quality_weighted_provider_fairness(report, inst.preferences, inst.catalog);
    row.exposure_per_item_variance = per_item_provider_fairness(report, inst.catalog);
  } else {
    std::size_t k = 0;
    for (const auto& list : flat) k = std::max(k, list.k());
    row = offline_metrics(inst, originals, flat, k, Algorithm::Tfrom);
  }

  const fs::path dir(flags.out);
  prepare_out(dir);
  const json summary = {{"command", "metrics"},
                        {"recommendations", recs.string()},
                        {"instance", instance_json(inst)},
                        {"lists", flat.size()},
                        {"results", json::array({row_json(row, stream ? "step" : "k", false)})}};
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

void add_run_flags(CLI::App* sub, RunFlags& flags, bool experiment) {
  sub->add_option("--preferences", flags.preferences, "customer,item,score table")->required();
  sub->add_option("--providers", flags.providers, "item,provider table")->required();
  sub->add_option("--out", flags.out, "output directory")->capture_default_str();
  if (!experiment) {
    sub->add_option("--recommendations", flags.recommendations,
                    "saved recommendations.csv (default: OUT/recommendations.csv)");
    return;
  }
  sub->add_option("--fairness", flags.fairness, "uniform | quality-weighted")->capture_default_str();
  sub->add_option("--algorithms", flags.algorithms, "comma list of tfrom,topk,random,minexp")
      ->capture_default_str();
  sub->add_option("--k", flags.ks, "comma list of list lengths")->capture_default_str();
  sub->add_option("--seed", flags.seed, "random seed")->capture_default_str();
  sub->add_option("--stream-multiplier", flags.stream_multiplier, "online requests per customer")
      ->capture_default_str();
  sub->add_option("--trace-every", flags.trace_every,
                  "online requests between trace rows (0: number of customers)")
      ->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-sided fairness-aware re-ranking"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic instance");
  gen_cmd->add_option("-m,--customers", gen.customers)->capture_default_str();
  gen_cmd->add_option("-n,--items", gen.items)->capture_default_str();
  gen_cmd->add_option("-l,--provider-count", gen.providers)->capture_default_str();
  gen_cmd->add_option("--skew", gen.skew, "provider size power-law exponent")->capture_default_str();
  gen_cmd->add_option("--distribution", gen.distribution, "uniform | exponential")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "output directory")->capture_default_str();

  RunFlags offline;
  RunFlags online;
  RunFlags metrics;
  auto* offline_cmd = app.add_subcommand("offline", "offline k-sweep");
  auto* online_cmd = app.add_subcommand("online", "online request stream");
  auto* metrics_cmd = app.add_subcommand("metrics", "recompute metrics from saved recommendations");
  add_run_flags(offline_cmd, offline, true);
  add_run_flags(online_cmd, online, true);
  add_run_flags(metrics_cmd, metrics, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (offline_cmd->parsed()) return cmd_offline(offline, err);
    if (online_cmd->parsed()) return cmd_online(online, err);
    return cmd_metrics(metrics, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::IoError ? 2 : 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace tfrom
