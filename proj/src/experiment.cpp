#include "senticl/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "senticl/errors.hpp"
#include "senticl/rng.hpp"

namespace senticl {

namespace {

std::vector<int> labels(const std::vector<Example>& examples) {
  std::vector<int> out;
  out.reserve(examples.size());
  for (const Example& e : examples) out.push_back(e.label);
  return out;
}

std::string oov_policy_name(OovPolicy p) {
  return p == OovPolicy::hash_uniform ? "hash_uniform" : "zero";
}

OovPolicy oov_policy_from_string(const std::string& s) {
  if (s == "zero") return OovPolicy::zero;
  if (s == "hash_uniform") return OovPolicy::hash_uniform;
  throw DataError("unknown oov_policy: " + s);
}

}  // namespace

std::uint64_t epoch_seed(std::uint64_t run_seed, std::size_t phase, int epoch) {
  return Rng::mix(Rng::mix(Rng::mix(run_seed, seed_stream::kPhase),
                           static_cast<std::uint64_t>(phase)),
                  static_cast<std::uint64_t>(epoch));
}

std::uint64_t final_epoch_seed(std::uint64_t run_seed, int epoch) {
  return Rng::mix(Rng::mix(run_seed, seed_stream::kFinal),
                  static_cast<std::uint64_t>(epoch));
}

void ExperimentConfig::validate() const {
  require(repeats >= 1, "config: repeats must be >= 1");
  require(bs >= 0, "config: bs must be >= 1 (0 selects the strategy default)");
  require(lr > 0.0, "config: lr must be positive");
  require(max_len >= 1, "config: max_len must be >= 1");
  require(sgd_batch >= 1, "config: sgd_batch must be >= 1");
  require(epochs_per_phase >= 0 && final_epochs >= 0,
          "config: epoch counts must be non-negative");
  require(epochs_per_phase + final_epochs >= 1,
          "config: at least one training epoch is required");
  require(aux_epochs >= 1, "config: aux_epochs must be >= 1");
  require(aux_input_dim == 8 || aux_input_dim == 9,
          "config: aux_input_dim must be 8 or 9");
  require(embed_dim >= 0, "config: embed_dim must be >= 0");
}

nlohmann::json ExperimentConfig::to_json() const {
  std::vector<std::string> strategy_names;
  strategy_names.reserve(strategies.size());
  for (StrategyKind s : strategies) strategy_names.push_back(to_string(s));
  return nlohmann::json{{"swn_path", swn_path},
                        {"sst_dir", sst_dir},
                        {"train_tsv", train_tsv},
                        {"dev_tsv", dev_tsv},
                        {"test_tsv", test_tsv},
                        {"embeddings_path", embeddings_path},
                        {"embed_dim", embed_dim},
                        {"model", to_string(model)},
                        {"strategy", to_string(strategy)},
                        {"scheduler", to_string(mode)},
                        {"oov_policy", oov_policy_name(oov_policy)},
                        {"bs", bs},
                        {"epochs_per_phase", epochs_per_phase},
                        {"final_epochs", final_epochs},
                        {"sgd_batch", sgd_batch},
                        {"lr", lr},
                        {"max_len", max_len},
                        {"repeats", repeats},
                        {"base_seed", base_seed},
                        {"aux_epochs", aux_epochs},
                        {"aux_input_dim", aux_input_dim},
                        {"report_path", report_path},
                        {"strategies", strategy_names}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("config: expected a JSON object");
  ExperimentConfig c;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "swn_path") c.swn_path = value.get<std::string>();
      else if (key == "sst_dir") c.sst_dir = value.get<std::string>();
      else if (key == "train_tsv") c.train_tsv = value.get<std::string>();
      else if (key == "dev_tsv") c.dev_tsv = value.get<std::string>();
      else if (key == "test_tsv") c.test_tsv = value.get<std::string>();
      else if (key == "embeddings_path") c.embeddings_path = value.get<std::string>();
      else if (key == "embed_dim") c.embed_dim = value.get<int>();
      else if (key == "model")
        c.model = model_kind_from_string(value.get<std::string>());
      else if (key == "strategy")
        c.strategy = strategy_kind_from_string(value.get<std::string>());
      else if (key == "scheduler")
        c.mode = scheduler_mode_from_string(value.get<std::string>());
      else if (key == "oov_policy")
        c.oov_policy = oov_policy_from_string(value.get<std::string>());
      else if (key == "bs") c.bs = value.get<int>();
      else if (key == "epochs_per_phase") c.epochs_per_phase = value.get<int>();
      else if (key == "final_epochs") c.final_epochs = value.get<int>();
      else if (key == "sgd_batch") c.sgd_batch = value.get<int>();
      else if (key == "lr") c.lr = value.get<double>();
      else if (key == "max_len") c.max_len = value.get<int>();
      else if (key == "repeats") c.repeats = value.get<int>();
      else if (key == "base_seed") c.base_seed = value.get<std::uint64_t>();
      else if (key == "aux_epochs") c.aux_epochs = value.get<int>();
      else if (key == "aux_input_dim") c.aux_input_dim = value.get<int>();
      else if (key == "report_path") c.report_path = value.get<std::string>();
      else if (key == "strategies") {
        c.strategies.clear();
        for (const auto& name : value)
          c.strategies.push_back(strategy_kind_from_string(name.get<std::string>()));
      } else {
        throw DataError("config: unknown key: " + key);
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError("config: bad value for key '" + key + "': " + e.what());
    }
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("config: invalid JSON in " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

int effective_bs(const ExperimentConfig& config, StrategyKind strategy,
                 std::size_t n) {
  require(n >= 1, "effective_bs: empty training set");
  if (config.bs >= 1) return config.bs;
  switch (strategy) {
    case StrategyKind::sentiwordnet: return 1400;
    case StrategyKind::sentence_length: return 750;
    case StrategyKind::none: return static_cast<int>(n);
  }
  throw std::invalid_argument("bad StrategyKind");
}

Dataset load_dataset_only(const ExperimentConfig& config) {
  Dataset dataset;
  if (!config.sst_dir.empty()) {
    dataset = load_sst_dir(config.sst_dir);
  } else if (!config.train_tsv.empty() || !config.dev_tsv.empty() ||
             !config.test_tsv.empty()) {
    if (config.train_tsv.empty() || config.dev_tsv.empty() ||
        config.test_tsv.empty())
      throw DataError("config: train_tsv, dev_tsv, and test_tsv must all be set");
    dataset = load_tsv_dataset(config.train_tsv, config.dev_tsv, config.test_tsv);
  } else {
    throw DataError("config: no dataset given (set sst_dir or the TSV paths)");
  }
  if (dataset.train.empty() || dataset.dev.empty() || dataset.test.empty())
    throw DataError("dataset: all three splits must be non-empty");
  return dataset;
}

Resources load_resources(const ExperimentConfig& config) {
  config.validate();
  Resources res;
  if (!config.swn_path.empty()) res.lexicon = load_swn_file(config.swn_path);
  res.dataset = load_dataset_only(config);
  if (config.embeddings_path.empty())
    throw DataError("config: embeddings_path is required");
  const auto vocab = vocabulary(res.dataset);
  res.embeddings = load_glove_file(
      config.embeddings_path,
      config.embed_dim > 0 ? std::optional<int>(config.embed_dim) : std::nullopt,
      &vocab);
  res.embeddings.set_oov_policy(config.oov_policy);
  return res;
}

double evaluate(const Classifier& model, const SentenceProvider& split) {
  require(split.size() > 0, "evaluate: empty split");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < split.size(); ++i) {
    const int id = static_cast<int>(i);
    Eigen::MatrixXd x = split.embed(id);
    if (argmax_lowest(model.forward(x, static_cast<int>(x.rows()))) ==
        split.label(id))
      ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(split.size());
}

TrainStats train_with_schedule(Classifier& model, const CurriculumSchedule& schedule,
                               const SentenceProvider& train,
                               const SentenceProvider& dev, const TrainOptions& opt,
                               std::uint64_t run_seed) {
  require(opt.sgd_batch >= 1 && opt.lr > 0.0, "train_with_schedule: bad options");
  require(schedule.phase_count() > 0, "train_with_schedule: empty schedule");
  require(schedule.example_count() == train.size(),
          "train_with_schedule: schedule does not cover the training split");

  TrainStats stats;
  stats.phase_count = schedule.phase_count();
  double best_dev = -1.0;
  std::vector<Eigen::MatrixXd> best_values;
  auto consider_snapshot = [&] {
    if (!opt.select_best_dev) return;
    const double acc = evaluate(model, dev);
    if (acc > best_dev) {
      best_dev = acc;
      best_values = model.params().values_copy();
    }
  };

  for (std::size_t k = 0; k < schedule.phase_count(); ++k) {
    for (int e = 1; e <= opt.epochs_per_phase; ++e) {
      auto ids = phase_iterator(schedule, k, epoch_seed(run_seed, k, e));
      train_on_stream(model, ids, train, opt.sgd_batch, opt.lr);
      ++stats.epochs_run;
      consider_snapshot();
    }
  }
  if (opt.final_epochs > 0) {
    std::vector<int> all(train.size());
    std::iota(all.begin(), all.end(), 0);
    for (int e = 1; e <= opt.final_epochs; ++e) {
      auto ids = all;
      Rng rng(final_epoch_seed(run_seed, e));
      rng.shuffle(ids);
      train_on_stream(model, ids, train, opt.sgd_batch, opt.lr);
      ++stats.epochs_run;
      consider_snapshot();
    }
  }

  if (opt.select_best_dev && best_dev >= 0.0) {
    model.params().set_values(best_values);
    stats.dev_acc = best_dev;
  } else {
    stats.dev_acc = evaluate(model, dev);
  }
  return stats;
}

std::uint64_t schedule_hash(const CurriculumSchedule& schedule) {
  const std::string dump = schedule.to_json().dump();
  return fnv1a(dump.data(), dump.size());
}

nlohmann::json RunResult::to_json() const {
  nlohmann::json j{{"seed", seed},
                   {"dev_acc", dev_acc},
                   {"test_acc", test_acc},
                   {"phase_count", phase_count},
                   {"wall_time_sec", wall_time_sec},
                   {"schedule_hash", schedule_hash}};
  if (aux.test_acc >= 0.0) {
    j["aux"] = {{"train_acc", aux.train_acc},
                {"dev_acc", aux.dev_acc},
                {"test_acc", aux.test_acc},
                {"best_epoch", aux.best_epoch}};
  }
  return j;
}

RunResult RunResult::from_json(const nlohmann::json& j) {
  RunResult r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.dev_acc = j.at("dev_acc").get<double>();
  r.test_acc = j.at("test_acc").get<double>();
  r.phase_count = j.at("phase_count").get<std::size_t>();
  r.wall_time_sec = j.at("wall_time_sec").get<double>();
  r.schedule_hash = j.at("schedule_hash").get<std::uint64_t>();
  if (j.contains("aux")) {
    const auto& a = j.at("aux");
    r.aux.train_acc = a.at("train_acc").get<double>();
    r.aux.dev_acc = a.at("dev_acc").get<double>();
    r.aux.test_acc = a.at("test_acc").get<double>();
    r.aux.best_epoch = a.at("best_epoch").get<int>();
  }
  return r;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json runs_json = nlohmann::json::array();
  for (const RunResult& r : runs) runs_json.push_back(r.to_json());
  return nlohmann::json{{"config", config},
                        {"strategy", strategy},
                        {"bs_used", bs_used},
                        {"runs", runs_json},
                        {"mean_test_acc", mean_test_acc},
                        {"stddev_test_acc", stddev_test_acc}};
}

RunReport RunReport::from_json(const nlohmann::json& j) {
  RunReport report;
  report.config = j.at("config");
  report.strategy = j.at("strategy").get<std::string>();
  report.bs_used = j.at("bs_used").get<int>();
  for (const auto& rj : j.at("runs"))
    report.runs.push_back(RunResult::from_json(rj));
  report.mean_test_acc = j.at("mean_test_acc").get<double>();
  report.stddev_test_acc = j.at("stddev_test_acc").get<double>();
  return report;
}

void RunReport::save_file(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write report file: " + path.string());
  out << to_json().dump(2) << '\n';
}

RunReport RunReport::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open report file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("report: invalid JSON in " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

void aggregate(RunReport& report) {
  require(!report.runs.empty(), "aggregate: no runs");
  double sum = 0.0;
  for (const RunResult& r : report.runs) sum += r.test_acc;
  report.mean_test_acc = sum / static_cast<double>(report.runs.size());
  double sq = 0.0;
  for (const RunResult& r : report.runs) {
    const double d = r.test_acc - report.mean_test_acc;
    sq += d * d;
  }
  report.stddev_test_acc = std::sqrt(sq / static_cast<double>(report.runs.size()));
}

Strategy build_strategy(const ExperimentConfig& config, const Resources& res,
                        StrategyKind strategy, std::uint64_t seed,
                        AuxSummary* aux_out) {
  const std::vector<Example>& train = res.dataset.train;
  if (strategy == StrategyKind::sentiwordnet) {
    if (res.lexicon.size() == 0)
      throw DataError(
          "sentiwordnet strategy requires a SentiWordNet lexicon (swn_path)");
    const auto fv_train = extract_all(res.lexicon, train);
    const NormalizationSpec spec = fit_normalizer(fv_train);
    const Eigen::MatrixXd X =
        aux_inputs(normalized_matrix(spec, fv_train), config.aux_input_dim);
    const std::vector<int> y = labels(train);
    const Eigen::MatrixXd Xdev = aux_inputs(
        normalized_matrix(spec, extract_all(res.lexicon, res.dataset.dev)),
        config.aux_input_dim);
    const std::vector<int> ydev = labels(res.dataset.dev);

    AuxModel aux(config.aux_input_dim,
                 Rng::mix(Rng::mix(seed, seed_stream::kAux), 1));
    AuxConfig aux_cfg;
    aux_cfg.input_dim = config.aux_input_dim;
    aux_cfg.epochs = config.aux_epochs;
    aux_cfg.batch = config.sgd_batch;
    aux_cfg.lr = config.lr;
    const AuxTrainResult aux_fit =
        train_aux(aux, X, y, Xdev, ydev, aux_cfg,
                  Rng::mix(Rng::mix(seed, seed_stream::kAux), 2));
    if (aux_out) {
      aux_out->train_acc = aux_fit.train_acc;
      aux_out->dev_acc = aux_fit.dev_acc;
      aux_out->best_epoch = aux_fit.best_epoch;
      const Eigen::MatrixXd Xtest = aux_inputs(
          normalized_matrix(spec, extract_all(res.lexicon, res.dataset.test)),
          config.aux_input_dim);
      aux_out->test_acc = aux_accuracy(aux, Xtest, labels(res.dataset.test));
    }
    return Strategy::sentiwordnet(difficulty_scores(aux, X, y).scores);
  }
  if (strategy == StrategyKind::sentence_length)
    return Strategy::sentence_length(train);
  return Strategy::none();
}

SingleRun run_single_with(const ExperimentConfig& config, const Resources& res,
                          StrategyKind strategy, std::uint64_t seed,
                          const TrainOptions& opt) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Example>& train = res.dataset.train;

  RunResult result;
  result.seed = seed;

  const Strategy strat = build_strategy(config, res, strategy, seed, &result.aux);

  const auto order =
      rank(strat, train.size(), Rng::mix(seed, seed_stream::kOrder));
  const int bs = effective_bs(config, strategy, train.size());
  const CurriculumSchedule schedule = make_schedule(order, bs, config.mode);
  result.schedule_hash = senticl::schedule_hash(schedule);
  result.phase_count = schedule.phase_count();

  auto model = make_classifier(config.model, res.embeddings.dimension(),
                               Rng::mix(seed, seed_stream::kModelInit));
  const SentenceProvider train_p(res.embeddings, train, config.max_len);
  const SentenceProvider dev_p(res.embeddings, res.dataset.dev, config.max_len);
  const SentenceProvider test_p(res.embeddings, res.dataset.test, config.max_len);

  const TrainStats stats =
      train_with_schedule(*model, schedule, train_p, dev_p, opt, seed);
  result.dev_acc = stats.dev_acc;
  result.test_acc = evaluate(*model, test_p);
  result.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return SingleRun{std::move(model), std::move(result)};
}

SingleRun run_single(const ExperimentConfig& config, std::uint64_t seed) {
  const Resources res = load_resources(config);
  TrainOptions opt;
  opt.epochs_per_phase = config.epochs_per_phase;
  opt.final_epochs = config.final_epochs;
  opt.sgd_batch = config.sgd_batch;
  opt.lr = config.lr;
  return run_single_with(config, res, config.strategy, seed, opt);
}

RunReport run_strategy(const ExperimentConfig& config, const Resources& res,
                       StrategyKind strategy) {
  ExperimentConfig echo = config;
  echo.strategy = strategy;

  RunReport report;
  report.config = echo.to_json();
  report.strategy = to_string(strategy);
  report.bs_used = effective_bs(config, strategy, res.dataset.train.size());

  TrainOptions opt;
  opt.epochs_per_phase = config.epochs_per_phase;
  opt.final_epochs = config.final_epochs;
  opt.sgd_batch = config.sgd_batch;
  opt.lr = config.lr;

  for (int r = 0; r < config.repeats; ++r) {
    const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(r);
    try {
      report.runs.push_back(
          run_single_with(config, res, strategy, seed, opt).result);
    } catch (const std::exception& e) {
      throw DataError("run failed (strategy=" + to_string(strategy) +
                      ", seed=" + std::to_string(seed) + "): " + e.what());
    }
  }
  aggregate(report);
  return report;
}

std::vector<RunReport> run_comparison(const ExperimentConfig& config) {
  config.validate();
  const Resources res = load_resources(config);
  std::vector<StrategyKind> strategies = config.strategies;
  if (strategies.empty())
    strategies = {StrategyKind::sentiwordnet, StrategyKind::sentence_length,
                  StrategyKind::none};
  std::vector<RunReport> reports;
  reports.reserve(strategies.size());
  for (StrategyKind s : strategies)
    reports.push_back(run_strategy(config, res, s));
  return reports;
}

}  // namespace senticl
