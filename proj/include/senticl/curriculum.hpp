#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "senticl/corpus.hpp"
#include "senticl/models.hpp"

namespace senticl {

enum class StrategyKind { sentiwordnet, sentence_length, none };
std::string to_string(StrategyKind kind);
StrategyKind strategy_kind_from_string(std::string_view s);

enum class SchedulerMode { baby_steps, one_pass };
std::string to_string(SchedulerMode mode);
SchedulerMode scheduler_mode_from_string(std::string_view s);

/// A difficulty assignment over training example ids. Score-based strategies
/// carry one score per id; `none` carries no scores and ranks by seeded
/// shuffle.
struct Strategy {
  StrategyKind kind = StrategyKind::none;
  std::vector<double> scores;  // empty for `none`

  static Strategy sentiwordnet(std::vector<double> difficulty);
  /// Difficulty = token count; shorter sentences are easier.
  static Strategy sentence_length(const std::vector<Example>& examples);
  static Strategy none();
};

/// Easiest-first permutation of 0..n-1. Score ties break by ascending id;
/// `none` returns a seeded uniform shuffle.
std::vector<int> rank(const Strategy& strategy, std::size_t n, std::uint64_t seed);

/// Consecutive chunks of a curriculum order. `phases` holds the ids that are
/// NEW at each phase; Baby Steps trains on the cumulative union, One-Pass on
/// each chunk alone.
struct CurriculumSchedule {
  SchedulerMode mode = SchedulerMode::baby_steps;
  int bs = 1;
  std::vector<std::vector<int>> phases;

  std::size_t phase_count() const { return phases.size(); }
  std::size_t example_count() const;
  /// The ids trained on during phase k (0-based): union of phases 0..k for
  /// Baby Steps, phases[k] alone for One-Pass. Ascending id order.
  std::vector<int> training_set(std::size_t k) const;

  nlohmann::json to_json() const;
  static CurriculumSchedule from_json(const nlohmann::json& j);
};

/// Splits `order` into chunks of size bs (the last may be smaller).
CurriculumSchedule make_schedule(const std::vector<int>& order, int bs,
                                 SchedulerMode mode);

/// Phase k's training set in a seeded shuffled order. The shuffle starts from
/// the ascending-id arrangement, so the stream depends only on the set of ids
/// and the seed — with a single phase this coincides with plain shuffled
/// training over the whole split.
std::vector<int> phase_iterator(const CurriculumSchedule& schedule, std::size_t k,
                                std::uint64_t epoch_seed);

}  // namespace senticl
