#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "senticl/corpus.hpp"
#include "senticl/curriculum.hpp"
#include "senticl/embeddings.hpp"
#include "senticl/models.hpp"
#include "senticl/swn_features.hpp"
#include "senticl/swn_lexicon.hpp"

namespace senticl {

/// Derivation constants for the per-run PRNG streams. Model initialization
/// and epoch shuffles depend only on the run seed, never on the strategy, so
/// strategy comparisons at the same seed are paired.
namespace seed_stream {
inline constexpr std::uint64_t kModelInit = 0x101;
inline constexpr std::uint64_t kAux = 0x102;
inline constexpr std::uint64_t kOrder = 0x103;
inline constexpr std::uint64_t kPhase = 0x104;
inline constexpr std::uint64_t kFinal = 0x105;
}  // namespace seed_stream

std::uint64_t epoch_seed(std::uint64_t run_seed, std::size_t phase, int epoch);
std::uint64_t final_epoch_seed(std::uint64_t run_seed, int epoch);

struct ExperimentConfig {
  // Resources. Either sst_dir (train.txt/dev.txt/test.txt of PTB trees) or
  // the three TSV paths must be set.
  std::string swn_path;
  std::string sst_dir;
  std::string train_tsv, dev_tsv, test_tsv;
  std::string embeddings_path;
  int embed_dim = 0;  // 0 = take the dimension from the embeddings file

  ModelKind model = ModelKind::kim_cnn;
  StrategyKind strategy = StrategyKind::sentiwordnet;
  SchedulerMode mode = SchedulerMode::baby_steps;
  OovPolicy oov_policy = OovPolicy::zero;

  int bs = 0;  // curriculum addition size; 0 picks the per-strategy default
  int epochs_per_phase = 2;
  int final_epochs = 5;
  int sgd_batch = 32;
  double lr = 0.01;
  int max_len = 50;
  int repeats = 10;
  std::uint64_t base_seed = 1;

  int aux_epochs = 30;
  int aux_input_dim = 9;

  std::string report_path;
  std::vector<StrategyKind> strategies;  // for compare; defaults to all three

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;

  nlohmann::json to_json() const;
  /// Strict: unknown keys are rejected. Missing keys keep their defaults.
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load_file(const std::filesystem::path& path);
};

/// bs actually used for a given training-set size: the configured value when
/// positive; otherwise 1400 (sentiwordnet), 750 (sentence_length), or n
/// (`none`, a single phase).
int effective_bs(const ExperimentConfig& config, StrategyKind strategy,
                 std::size_t n);

/// Read-only shared inputs for a batch of runs.
struct Resources {
  SentimentLexicon lexicon;  // empty unless a SWN path was given
  Dataset dataset;
  EmbeddingTable embeddings{0, {}};
};

Resources load_resources(const ExperimentConfig& config);

/// Just the corpus (sst_dir or the TSV triple), without lexicon/embeddings.
Dataset load_dataset_only(const ExperimentConfig& config);

struct TrainOptions {
  int epochs_per_phase = 2;
  int final_epochs = 5;
  int sgd_batch = 32;
  double lr = 0.01;
  /// When true, dev accuracy is measured after every epoch and the best
  /// snapshot is restored at the end; when false the final parameters stand.
  bool select_best_dev = true;
};

struct TrainStats {
  std::size_t phase_count = 0;
  int epochs_run = 0;
  double dev_acc = -1.0;  // accuracy of the parameters left in the model
};

/// Scheduled training: epochs_per_phase over each phase's training set, then
/// final_epochs over the full split, warm-starting throughout.
TrainStats train_with_schedule(Classifier& model, const CurriculumSchedule& schedule,
                               const SentenceProvider& train,
                               const SentenceProvider& dev, const TrainOptions& opt,
                               std::uint64_t run_seed);

/// Fraction of examples whose argmax class (lowest index on ties) equals the
/// label. Throws on an empty split.
double evaluate(const Classifier& model, const SentenceProvider& split);

struct AuxSummary {
  double train_acc = -1.0;
  double dev_acc = -1.0;
  double test_acc = -1.0;
  int best_epoch = 0;
};

struct RunResult {
  std::uint64_t seed = 0;
  double dev_acc = 0.0;
  double test_acc = 0.0;
  std::size_t phase_count = 0;
  double wall_time_sec = 0.0;
  std::uint64_t schedule_hash = 0;
  AuxSummary aux;  // populated for the sentiwordnet strategy

  nlohmann::json to_json() const;
  static RunResult from_json(const nlohmann::json& j);
};

struct RunReport {
  nlohmann::json config;  // full echo of the effective configuration
  std::string strategy;
  int bs_used = 0;
  std::vector<RunResult> runs;
  double mean_test_acc = 0.0;
  double stddev_test_acc = 0.0;  // population standard deviation

  nlohmann::json to_json() const;
  static RunReport from_json(const nlohmann::json& j);
  void save_file(const std::filesystem::path& path) const;
  static RunReport load_file(const std::filesystem::path& path);
};

/// Mean and population standard deviation; mean is the exact arithmetic mean.
void aggregate(RunReport& report);

/// Digest of the schedule JSON, recorded so a report's ordering is replayable.
std::uint64_t schedule_hash(const CurriculumSchedule& schedule);

struct SingleRun {
  std::unique_ptr<Classifier> model;
  RunResult result;
};

/// The difficulty assignment a run would use: trains the aux model for the
/// sentiwordnet strategy (filling *aux_out with its accuracies when given),
/// counts tokens for sentence_length, and is score-free for `none`. Uses the
/// same seed streams as a full run.
Strategy build_strategy(const ExperimentConfig& config, const Resources& res,
                        StrategyKind strategy, std::uint64_t seed,
                        AuxSummary* aux_out = nullptr);

/// One full pipeline execution: strategy scores (training the aux model for
/// sentiwordnet) -> rank -> schedule -> train -> evaluate. Deterministic
/// given (config, resources, seed).
SingleRun run_single_with(const ExperimentConfig& config, const Resources& res,
                          StrategyKind strategy, std::uint64_t seed,
                          const TrainOptions& opt);
SingleRun run_single(const ExperimentConfig& config, std::uint64_t seed);

/// repeats runs of one strategy with seed = base_seed + repeat index.
RunReport run_strategy(const ExperimentConfig& config, const Resources& res,
                       StrategyKind strategy);

/// Paired comparison across strategies: every strategy sees the same seeds,
/// so per-seed differences isolate the sample order.
std::vector<RunReport> run_comparison(const ExperimentConfig& config);

}  // namespace senticl
