// Python bindings. Ids cross the boundary as plain ints and lists as Python
// lists of item ids.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "tfrom/baselines.hpp"
#include "tfrom/error.hpp"
#include "tfrom/experiment.hpp"
#include "tfrom/io.hpp"
#include "tfrom/metrics.hpp"
#include "tfrom/offline.hpp"
#include "tfrom/online.hpp"
#include "tfrom/synthetic.hpp"
#include "tfrom/targets.hpp"

namespace py = pybind11;
using namespace tfrom;

namespace {

using Items = std::vector<std::uint32_t>;

FairnessMode mode_of(const std::string& text) {
  if (auto mode = parse_fairness_mode(text)) return *mode;
  throw Error(ErrorCode::InvalidConfig, "unknown fairness mode '" + text + "'");
}

std::vector<Algorithm> algorithms_of(const std::vector<std::string>& names) {
  std::vector<Algorithm> out;
  for (const auto& name : names) {
    auto algorithm = parse_algorithm(name);
    if (!algorithm) throw Error(ErrorCode::InvalidConfig, "unknown algorithm '" + name + "'");
    out.push_back(*algorithm);
  }
  return out;
}

Items to_ints(std::span<const ItemId> items) {
  Items out;
  out.reserve(items.size());
  for (auto i : items) out.push_back(i.index());
  return out;
}

RecommendationList to_list(std::uint32_t owner, const Items& items) {
  RecommendationList list{CustomerId(owner), {}};
  for (auto i : items) list.items.push_back(ItemId(i));
  return list;
}

CustomerId customer(const Instance& inst, std::uint32_t u) {
  if (u >= inst.customers()) throw Error(ErrorCode::UnknownCustomer, "customer " + std::to_string(u));
  return CustomerId(u);
}

std::vector<RecommendationList> to_lists(const Instance& inst, const std::vector<Items>& lists) {
  std::vector<RecommendationList> out;
  for (std::size_t u = 0; u < lists.size(); ++u) {
    out.push_back(to_list(static_cast<std::uint32_t>(u), lists[u]));
    validate_list(out.back(), inst);
  }
  return out;
}

py::dict row_dict(const MetricRow& row) {
  py::dict d;
  d["step"] = row.step;
  d["algorithm"] = std::string(to_string(row.algorithm));
  d["total_quality"] = row.total_quality;
  d["ndcg_variance"] = row.ndcg_variance;
  d["ndcg_variance_all"] = row.ndcg_variance_all;
  d["exposure_variance"] = row.exposure_variance;
  d["qw_ratio_variance"] = row.qw_ratio_variance;
  d["exposure_per_item_variance"] = row.exposure_per_item_variance;
  return d;
}

py::list trace_rows(const MetricTrace& trace) {
  py::list rows;
  for (const auto& row : trace.rows) rows.append(row_dict(row));
  return rows;
}

Instance make_instance(const std::vector<std::vector<double>>& scores, const std::vector<std::size_t>& providers) {
  return build_instance(scores, providers);
}

}  // namespace

PYBIND11_MODULE(_tfrom, m) {
  m.doc() = "Fair re-ranking of recommendation lists under provider exposure targets.";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("scores"), py::arg("providers"),
           "Customers x items score rows and one provider label per item.")
      .def_property_readonly("customers", &Instance::customers)
      .def_property_readonly("items", &Instance::items)
      .def_property_readonly("providers", &Instance::providers)
      .def("score", [](const Instance& inst, std::uint32_t u, std::uint32_t i) {
        if (i >= inst.items()) throw Error(ErrorCode::InvalidList, "item " + std::to_string(i));
        return inst.preferences.at(customer(inst, u), ItemId(i));
      })
      .def("provider_of", [](const Instance& inst, std::uint32_t i) {
        if (i >= inst.items()) throw Error(ErrorCode::InvalidList, "item " + std::to_string(i));
        return inst.catalog.provider_of(ItemId(i)).index();
      })
      .def("provider_label", [](const Instance& inst, std::uint32_t p) {
        if (p >= inst.providers()) throw Error(ErrorCode::InvalidShape, "provider " + std::to_string(p));
        return inst.catalog.label(ProviderId(p));
      })
      .def("provider_relevance", [](const Instance& inst) { return provider_relevance(inst.preferences, inst.catalog); });

  m.def("load_instance", [](const std::string& preferences, const std::string& providers) {
    return load_instance(preferences, providers).instance;
  }, py::arg("preferences"), py::arg("providers"));

  m.def("generate_synthetic",
        [](std::size_t customers, std::size_t items, std::size_t providers, const std::string& distribution,
           double skew, std::uint64_t seed) {
          auto dist = parse_score_distribution(distribution);
          if (!dist) throw Error(ErrorCode::InvalidConfig, "unknown distribution '" + distribution + "'");
          return generate_synthetic({customers, items, providers, *dist, skew, seed}).instance;
        },
        py::arg("customers") = SyntheticSpec{}.customers, py::arg("items") = SyntheticSpec{}.items,
        py::arg("providers") = SyntheticSpec{}.providers, py::arg("distribution") = "uniform",
        py::arg("skew") = SyntheticSpec{}.provider_size_skew, py::arg("seed") = SyntheticSpec{}.seed);

  m.def("original_ranking", [](const Instance& inst, std::uint32_t u) {
    return to_ints(original_ranking(inst.preferences, customer(inst, u)).items);
  }, py::arg("instance"), py::arg("customer"));

  m.def("position_weight", &position_weight, py::arg("rank"));
  m.def("total_exposure", &total_exposure, py::arg("customers"), py::arg("k"));
  m.def("online_total_exposure", &online_total_exposure, py::arg("requests"), py::arg("k"));
  m.def("fair_targets", [](const Instance& inst, double total, const std::string& mode) {
    return fair_targets(mode_of(mode), total, inst.catalog, inst.preferences).per_provider;
  }, py::arg("instance"), py::arg("total"), py::arg("mode") = "uniform");

  m.def("dcg", [](const Instance& inst, std::uint32_t u, const Items& items) {
    const auto list = to_list(u, items);
    validate_list(list, inst);
    return dcg(inst.preferences, list.owner, list.items);
  }, py::arg("instance"), py::arg("customer"), py::arg("items"));
  m.def("ndcg", [](const Instance& inst, std::uint32_t u, const Items& items) {
    const auto list = to_list(u, items);
    validate_list(list, inst);
    return ndcg(inst.preferences, list, original_ranking(inst.preferences, list.owner));
  }, py::arg("instance"), py::arg("customer"), py::arg("items"));

  m.def("exposure", [](const Instance& inst, const std::vector<Items>& lists) {
    const auto report = exposure(to_lists(inst, lists), inst.catalog);
    py::dict d;
    d["per_item"] = report.per_item;
    d["per_provider"] = report.per_provider;
    return d;
  }, py::arg("instance"), py::arg("lists"), "Exposure of one list per customer, indexed by customer.");

  m.def("tfrom_offline", [](const Instance& inst, std::size_t k, const std::string& mode, std::uint64_t seed) {
    const auto originals = original_rankings(inst.preferences);
    const auto run = tfrom_offline(inst, originals, k, mode_of(mode), seed);
    std::vector<Items> lists;
    for (const auto& list : run.lists) lists.push_back(to_ints(list.items));
    py::list skipped;
    for (const auto& s : run.skipped) skipped.append(py::make_tuple(s.customer.index(), s.rank));
    py::dict d;
    d["lists"] = lists;
    d["exposure"] = run.exposure;
    d["quality"] = run.quality;
    d["targets"] = run.targets.per_provider;
    d["skipped"] = skipped;
    d["metrics"] = row_dict(offline_metrics(inst, originals, run.lists, k, Algorithm::Tfrom));
    return d;
  }, py::arg("instance"), py::arg("k"), py::arg("mode") = "uniform", py::arg("seed") = 42);

  py::class_<OnlineRecommender>(m, "OnlineRecommender")
      .def(py::init([](const Instance& inst, std::size_t k, const std::string& mode) {
             return OnlineRecommender(inst, k, mode_of(mode));
           }),
           py::arg("instance"), py::arg("k"), py::arg("mode") = "uniform", py::keep_alive<1, 2>())
      .def("serve", [](OnlineRecommender& rec, std::uint32_t u) { return to_ints(rec.serve(CustomerId(u)).items); },
           py::arg("customer"))
      .def_property_readonly("k", &OnlineRecommender::k)
      .def_property_readonly("exposure", [](const OnlineRecommender& r) {
        const auto e = r.state().exposure();
        return std::vector<double>(e.begin(), e.end());
      })
      .def_property_readonly("avg_quality", [](const OnlineRecommender& r) {
        const auto q = r.state().avg_quality();
        return std::vector<double>(q.begin(), q.end());
      })
      .def_property_readonly("rec_time", [](const OnlineRecommender& r) {
        const auto t = r.state().rec_time();
        return std::vector<std::size_t>(t.begin(), t.end());
      })
      .def_property_readonly("requests", [](const OnlineRecommender& r) { return r.state().requests(); })
      .def("snapshot", [](const OnlineRecommender& r) { return r.state().to_json().dump(); },
           "State as a JSON string.")
      .def("restore", [](OnlineRecommender& r, const std::string& text) {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorCode::ParseError, e.what());
        }
        r.restore(OnlineState::from_json(j));
      }, py::arg("snapshot"));

  m.def("top_k", [](const Instance& inst, std::uint32_t u, std::size_t k) {
    return to_ints(top_k(original_ranking(inst.preferences, customer(inst, u)), k).items);
  }, py::arg("instance"), py::arg("customer"), py::arg("k"));
  m.def("all_random", [](const Instance& inst, std::uint32_t u, std::size_t k, std::uint64_t seed) {
    return to_ints(all_random(original_ranking(inst.preferences, customer(inst, u)), k, seed).items);
  }, py::arg("instance"), py::arg("customer"), py::arg("k"), py::arg("seed"));
  m.def("minimum_exposure",
        [](const Instance& inst, std::uint32_t u, std::size_t k, std::vector<double> ledger) {
          const auto original = original_ranking(inst.preferences, customer(inst, u));
          const auto list = minimum_exposure(original, inst.preferences, inst.catalog, ledger, k);
          return py::make_tuple(to_ints(list.items), ledger);
        },
        py::arg("instance"), py::arg("customer"), py::arg("k"), py::arg("ledger"),
        "Returns (items, updated per-provider ledger).");

  m.def("run_offline",
        [](const Instance& inst, const std::vector<std::size_t>& ks, const std::vector<std::string>& algorithms,
           const std::string& mode, std::uint64_t seed) {
          ExperimentConfig config;
          config.fairness = mode_of(mode);
          config.algorithms = algorithms_of(algorithms);
          config.ks = ks;
          config.seed = seed;
          return trace_rows(run_offline_sweep(config, inst).trace);
        },
        py::arg("instance"), py::arg("ks"), py::arg("algorithms") = std::vector<std::string>{"tfrom", "topk"},
        py::arg("mode") = "uniform", py::arg("seed") = 42, "One metrics row per (k, algorithm).");

  m.def("run_online",
        [](const Instance& inst, std::size_t k, const std::vector<std::string>& algorithms, const std::string& mode,
           std::uint64_t seed, std::size_t stream_multiplier, std::size_t trace_every) {
          ExperimentConfig config;
          config.scenario = Scenario::Online;
          config.fairness = mode_of(mode);
          config.algorithms = algorithms_of(algorithms);
          config.ks = {k};
          config.seed = seed;
          config.stream_multiplier = stream_multiplier;
          config.trace_every = trace_every;
          return trace_rows(run_online_stream(config, inst).trace);
        },
        py::arg("instance"), py::arg("k"), py::arg("algorithms") = std::vector<std::string>{"tfrom", "topk"},
        py::arg("mode") = "uniform", py::arg("seed") = 42, py::arg("stream_multiplier") = 10,
        py::arg("trace_every") = 0, "Metrics rows along a seeded request stream.");
}
