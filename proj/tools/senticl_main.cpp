// senticl: curriculum-learning experiments for SST-5 sentiment classification.
//
// Exit codes: 0 on success, 1 on a usage error, 2 when the requested
// operation fails (unreadable resources, malformed inputs, failed checks).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "senticl/corpus.hpp"
#include "senticl/curriculum.hpp"
#include "senticl/errors.hpp"
#include "senticl/experiment.hpp"
#include "senticl/models.hpp"
#include "senticl/nnet.hpp"
#include "senticl/rng.hpp"
#include "senticl/swn_features.hpp"
#include "senticl/swn_lexicon.hpp"

namespace {

using namespace senticl;

/// `--config` plus per-key override flags shared by the experiment commands.
/// Overrides are collected as a JSON patch and merged over the file before
/// the strict config parser sees them.
struct ConfigArgs {
  std::string path;
  nlohmann::json patch = nlohmann::json::object();

  void add_to(CLI::App* cmd, bool with_strategy = true) {
    cmd->add_option("--config", path, "JSON configuration file")
        ->check(CLI::ExistingFile);
    auto str = [this, cmd](const std::string& flag, const char* key,
                           const std::string& desc) {
      cmd->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { patch[key] = v; }, desc);
    };
    auto num = [this, cmd](const std::string& flag, const char* key,
                           const std::string& desc) {
      cmd->add_option_function<int>(
          flag, [this, key](int v) { patch[key] = v; }, desc);
    };
    str("--swn", "swn_path", "SentiWordNet 3.0 lexicon file");
    str("--sst-dir", "sst_dir", "directory with train/dev/test.txt PTB trees");
    str("--embeddings", "embeddings_path", "GloVe-format embedding file");
    str("--model", "model", "classifier: kim_cnn or mlp_mean_embedding");
    if (with_strategy)
      str("--strategy", "strategy",
          "curriculum strategy: sentiwordnet, sentence_length, or none");
    str("--scheduler", "scheduler", "scheduler: baby_steps or one_pass");
    num("--bs", "bs", "curriculum batch size (0 = per-strategy default)");
    num("--epochs-per-phase", "epochs_per_phase", "epochs per curriculum phase");
    num("--final-epochs", "final_epochs", "full-data epochs after the phases");
    num("--sgd-batch", "sgd_batch", "minibatch size for Adam");
    num("--max-len", "max_len", "sentence length cap in tokens");
    num("--repeats", "repeats", "number of seeded repeats");
    num("--aux-epochs", "aux_epochs", "training epochs for the difficulty model");
    num("--aux-input-dim", "aux_input_dim", "difficulty-model inputs: 9 or 8");
    num("--embed-dim", "embed_dim", "expected embedding dimension (0 = infer)");
    cmd->add_option_function<double>(
        "--lr", [this](double v) { patch["lr"] = v; }, "Adam learning rate");
  }

  ExperimentConfig resolve() const {
    nlohmann::json base = nlohmann::json::object();
    if (!path.empty()) {
      std::ifstream in(path);
      if (!in) throw DataError("cannot open config file: " + path);
      try {
        in >> base;
      } catch (const nlohmann::json::exception& e) {
        throw DataError("config: invalid JSON in " + path + ": " + e.what());
      }
    }
    for (const auto& [key, value] : patch.items()) base[key] = value;
    return ExperimentConfig::from_json(base);
  }
};

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot open output file: " + path);
  fn(out);
}

/// Lexicon and dataset only; embeddings are loaded lazily by the commands
/// that actually train a classifier.
Resources load_corpus_resources(const ExperimentConfig& config) {
  Resources res;
  if (!config.swn_path.empty()) res.lexicon = load_swn_file(config.swn_path);
  res.dataset = load_dataset_only(config);
  return res;
}

const std::vector<Example>& pick_split(const Dataset& ds, const std::string& name) {
  if (name == "train") return ds.train;
  if (name == "dev") return ds.dev;
  if (name == "test") return ds.test;
  throw DataError("unknown split: " + name + " (expected train, dev, or test)");
}

int run_gradcheck(std::uint64_t seed) {
  Rng rng(seed);
  AuxModel aux(9, Rng::mix(seed, 1));
  const int n = 4;
  Eigen::MatrixXd X(n, 9);
  std::vector<int> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 9; ++j) X(i, j) = rng.uniform(-1.0, 1.0);
    y[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(5));
  }
  auto aux_loss = [&] {
    double total = 0.0;
    for (int i = 0; i < n; ++i)
      total -= std::log(aux.forward(X.row(i).transpose())[y[static_cast<std::size_t>(i)]]);
    return total;
  };
  auto aux_backward = [&] {
    double total = 0.0;
    for (int i = 0; i < n; ++i)
      total += aux.loss_and_backward(X.row(i).transpose(), y[static_cast<std::size_t>(i)]);
    return total;
  };
  const GradCheckResult aux_gc =
      grad_check(aux.params(), aux_loss, aux_backward, Rng::mix(seed, 2), 200);

  const int dim = 5;
  auto cnn = make_classifier(ModelKind::kim_cnn, dim, Rng::mix(seed, 3));
  Eigen::MatrixXd x(8, dim);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < dim; ++c) x(r, c) = rng.uniform(-0.5, 0.5);
  auto cnn_loss = [&] { return -std::log(cnn->forward(x, 8)[2]); };
  auto cnn_backward = [&] { return cnn->loss_and_backward(x, 8, 2); };
  const GradCheckResult cnn_gc =
      grad_check(cnn->params(), cnn_loss, cnn_backward, Rng::mix(seed, 4), 200);

  const double tolerance = 1e-4;
  const bool ok =
      aux_gc.max_rel_error < tolerance && cnn_gc.max_rel_error < tolerance;
  nlohmann::json out{{"aux_max_rel_error", aux_gc.max_rel_error},
                     {"cnn_max_rel_error", cnn_gc.max_rel_error},
                     {"parameters_checked", aux_gc.checked + cnn_gc.checked},
                     {"tolerance", tolerance},
                     {"ok", ok}};
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curriculum-learning experiments for SST-5 sentiment"};
  app.require_subcommand(1);
  int exit_override = 0;

  // lexicon stats
  auto* lexicon = app.add_subcommand("lexicon", "Inspect a SentiWordNet file");
  lexicon->require_subcommand(1);
  auto* lex_stats = lexicon->add_subcommand("stats", "Record and lemma counts");
  struct {
    std::string swn;
    std::vector<std::string> words;
  } lex_args;
  lex_stats->add_option("--swn", lex_args.swn, "SentiWordNet 3.0 lexicon file")
      ->required();
  lex_stats->add_option("--word", lex_args.words,
                        "also report the mean scores of these words");
  lex_stats->callback([&] {
    const SentimentLexicon lex = load_swn_file(lex_args.swn);
    nlohmann::json out{{"path", lex_args.swn},
                       {"records", lex.record_count()},
                       {"lemmas", lex.size()}};
    nlohmann::json words = nlohmann::json::array();
    for (const std::string& w : lex_args.words) {
      const auto score = lex.lookup(w);
      nlohmann::json entry{{"word", w}, {"found", score.has_value()}};
      if (score) {
        entry["pos"] = score->positivity;
        entry["neg"] = score->negativity;
        entry["obj"] = score->objectivity;
      }
      words.push_back(std::move(entry));
    }
    if (!words.empty()) out["words"] = std::move(words);
    std::cout << out.dump(2) << "\n";
  });

  // features export
  auto* features = app.add_subcommand("features", "Lexicon feature vectors");
  features->require_subcommand(1);
  auto* fx = features->add_subcommand("export", "Write per-sentence features as CSV");
  struct {
    ConfigArgs config;
    std::string split = "train";
    std::string out;
    bool normalized = false;
  } fx_args;
  fx_args.config.add_to(fx, false);
  fx->add_option("--split", fx_args.split, "train, dev, or test (default train)");
  fx->add_flag("--normalized", fx_args.normalized,
               "mean-center and scale using statistics fitted on train");
  fx->add_option("--out", fx_args.out, "output file (default stdout)");
  fx->callback([&] {
    const ExperimentConfig config = fx_args.config.resolve();
    if (config.swn_path.empty())
      throw DataError("features export requires a lexicon (swn_path / --swn)");
    const Resources res = load_corpus_resources(config);
    const auto& split = pick_split(res.dataset, fx_args.split);
    const auto fvs = extract_all(res.lexicon, split);
    with_output(fx_args.out, [&](std::ostream& os) {
      if (fx_args.normalized) {
        const NormalizationSpec spec =
            fit_normalizer(extract_all(res.lexicon, res.dataset.train));
        write_normalized_csv(os, spec, fvs);
      } else {
        write_features_csv(os, fvs);
      }
    });
  });

  // aux train
  auto* aux = app.add_subcommand("aux", "The SentiWordNet difficulty model");
  aux->require_subcommand(1);
  auto* aux_train = aux->add_subcommand(
      "train", "Train the difficulty model and report its accuracies");
  struct {
    ConfigArgs config;
    std::uint64_t seed = 0;
    std::string ranking_out;
  } aux_args;
  aux_args.config.add_to(aux_train, false);
  auto* aux_seed =
      aux_train->add_option("--seed", aux_args.seed, "run seed (default base_seed)");
  aux_train->add_option("--ranking-out", aux_args.ranking_out,
                        "write the per-sentence difficulty scores as CSV");
  aux_train->callback([&] {
    const ExperimentConfig config = aux_args.config.resolve();
    const Resources res = load_corpus_resources(config);
    const std::uint64_t seed = aux_seed->count() ? aux_args.seed : config.base_seed;
    AuxSummary summary;
    const Strategy strat =
        build_strategy(config, res, StrategyKind::sentiwordnet, seed, &summary);
    if (!aux_args.ranking_out.empty())
      with_output(aux_args.ranking_out, [&](std::ostream& os) {
        write_ranking_csv(os, DifficultyRanking{strat.scores});
      });
    nlohmann::json out{{"seed", seed},
                       {"train_acc", summary.train_acc},
                       {"dev_acc", summary.dev_acc},
                       {"test_acc", summary.test_acc},
                       {"best_epoch", summary.best_epoch}};
    std::cout << out.dump(2) << "\n";
  });

  // rank
  auto* rank_cmd = app.add_subcommand(
      "rank", "Print the easiest-first training order as CSV");
  struct {
    ConfigArgs config;
    std::uint64_t seed = 0;
    std::string out;
  } rank_args;
  rank_args.config.add_to(rank_cmd);
  auto* rank_seed =
      rank_cmd->add_option("--seed", rank_args.seed, "run seed (default base_seed)");
  rank_cmd->add_option("--out", rank_args.out, "output file (default stdout)");
  rank_cmd->callback([&] {
    const ExperimentConfig config = rank_args.config.resolve();
    const Resources res = load_corpus_resources(config);
    const std::uint64_t seed = rank_seed->count() ? rank_args.seed : config.base_seed;
    const Strategy strat = build_strategy(config, res, config.strategy, seed);
    const auto order = rank(strat, res.dataset.train.size(),
                            Rng::mix(seed, seed_stream::kOrder));
    with_output(rank_args.out, [&](std::ostream& os) {
      os << "rank,id\n";
      for (std::size_t i = 0; i < order.size(); ++i)
        os << i << "," << order[i] << "\n";
    });
  });

  // schedule
  auto* sched_cmd = app.add_subcommand(
      "schedule", "Print the curriculum schedule (phases of example ids) as JSON");
  struct {
    ConfigArgs config;
    std::uint64_t seed = 0;
    std::string out;
  } sched_args;
  sched_args.config.add_to(sched_cmd);
  auto* sched_seed =
      sched_cmd->add_option("--seed", sched_args.seed, "run seed (default base_seed)");
  sched_cmd->add_option("--out", sched_args.out, "output file (default stdout)");
  sched_cmd->callback([&] {
    const ExperimentConfig config = sched_args.config.resolve();
    const Resources res = load_corpus_resources(config);
    const std::uint64_t seed = sched_seed->count() ? sched_args.seed : config.base_seed;
    const Strategy strat = build_strategy(config, res, config.strategy, seed);
    const auto order = rank(strat, res.dataset.train.size(),
                            Rng::mix(seed, seed_stream::kOrder));
    const int bs = effective_bs(config, config.strategy, order.size());
    const CurriculumSchedule schedule = make_schedule(order, bs, config.mode);
    with_output(sched_args.out,
                [&](std::ostream& os) { os << schedule.to_json().dump(2) << "\n"; });
  });

  // train
  auto* train_cmd =
      app.add_subcommand("train", "One full curriculum run; prints the result JSON");
  struct {
    ConfigArgs config;
    std::uint64_t seed = 0;
    std::string out;
  } train_args;
  train_args.config.add_to(train_cmd);
  auto* train_seed =
      train_cmd->add_option("--seed", train_args.seed, "run seed (default base_seed)");
  train_cmd->add_option("--out", train_args.out, "also write the result JSON here");
  train_cmd->callback([&] {
    const ExperimentConfig config = train_args.config.resolve();
    const std::uint64_t seed = train_seed->count() ? train_args.seed : config.base_seed;
    const SingleRun run = run_single(config, seed);
    const std::string text = run.result.to_json().dump(2) + "\n";
    std::cout << text;
    if (!train_args.out.empty())
      with_output(train_args.out, [&](std::ostream& os) { os << text; });
  });

  // compare
  auto* cmp_cmd = app.add_subcommand(
      "compare", "Paired multi-seed comparison across curriculum strategies");
  struct {
    ConfigArgs config;
    std::string out;
  } cmp_args;
  cmp_args.config.add_to(cmp_cmd, false);
  cmp_cmd->add_option("--out", cmp_args.out,
                      "write the full reports JSON here (default report_path)");
  cmp_cmd->callback([&] {
    const ExperimentConfig config = cmp_args.config.resolve();
    const std::vector<RunReport> reports = run_comparison(config);
    nlohmann::json arr = nlohmann::json::array();
    for (const RunReport& r : reports) arr.push_back(r.to_json());
    const std::string dest =
        !cmp_args.out.empty() ? cmp_args.out : config.report_path;
    if (!dest.empty())
      with_output(dest, [&](std::ostream& os) { os << arr.dump(2) << "\n"; });
    for (const RunReport& r : reports)
      std::cout << r.strategy << ": mean test acc " << r.mean_test_acc
                << ", stddev " << r.stddev_test_acc << " over "
                << r.runs.size() << " seeds (bs " << r.bs_used << ")\n";
    if (dest.empty()) std::cout << arr.dump(2) << "\n";
  });

  // gradcheck
  auto* gc_cmd = app.add_subcommand(
      "gradcheck", "Compare analytic gradients against central differences");
  std::uint64_t gc_seed = 20260814;
  gc_cmd->add_option("--seed", gc_seed, "seed for the synthetic inputs");
  gc_cmd->callback([&] { exit_override = run_gradcheck(gc_seed); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_override;
}
