#include "senticl/curriculum.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "senticl/errors.hpp"
#include "senticl/rng.hpp"

namespace senticl {

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::sentiwordnet: return "sentiwordnet";
    case StrategyKind::sentence_length: return "sentence_length";
    case StrategyKind::none: return "none";
  }
  throw std::invalid_argument("bad StrategyKind");
}

StrategyKind strategy_kind_from_string(std::string_view s) {
  if (s == "sentiwordnet") return StrategyKind::sentiwordnet;
  if (s == "sentence_length") return StrategyKind::sentence_length;
  if (s == "none") return StrategyKind::none;
  throw DataError("unknown strategy: " + std::string(s));
}

std::string to_string(SchedulerMode mode) {
  return mode == SchedulerMode::one_pass ? "one_pass" : "baby_steps";
}

SchedulerMode scheduler_mode_from_string(std::string_view s) {
  if (s == "baby_steps") return SchedulerMode::baby_steps;
  if (s == "one_pass") return SchedulerMode::one_pass;
  throw DataError("unknown scheduler mode: " + std::string(s));
}

Strategy Strategy::sentiwordnet(std::vector<double> difficulty) {
  Strategy s;
  s.kind = StrategyKind::sentiwordnet;
  s.scores = std::move(difficulty);
  return s;
}

Strategy Strategy::sentence_length(const std::vector<Example>& examples) {
  Strategy s;
  s.kind = StrategyKind::sentence_length;
  s.scores.reserve(examples.size());
  for (const Example& e : examples)
    s.scores.push_back(static_cast<double>(e.tokens.size()));
  return s;
}

Strategy Strategy::none() { return Strategy{}; }

std::vector<int> rank(const Strategy& strategy, std::size_t n, std::uint64_t seed) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (strategy.kind == StrategyKind::none) {
    require(strategy.scores.empty(), "rank: strategy `none` carries no scores");
    Rng rng(seed);
    rng.shuffle(order);
    return order;
  }
  require(strategy.scores.size() == n, "rank: score list length != n");
  const std::vector<double>& s = strategy.scores;
  std::sort(order.begin(), order.end(), [&s](int a, int b) {
    if (s[static_cast<std::size_t>(a)] != s[static_cast<std::size_t>(b)])
      return s[static_cast<std::size_t>(a)] < s[static_cast<std::size_t>(b)];
    return a < b;
  });
  return order;
}

std::size_t CurriculumSchedule::example_count() const {
  std::size_t n = 0;
  for (const auto& phase : phases) n += phase.size();
  return n;
}

std::vector<int> CurriculumSchedule::training_set(std::size_t k) const {
  require(k < phases.size(), "training_set: phase index out of range");
  std::vector<int> ids;
  if (mode == SchedulerMode::baby_steps) {
    for (std::size_t p = 0; p <= k; ++p)
      ids.insert(ids.end(), phases[p].begin(), phases[p].end());
  } else {
    ids = phases[k];
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

nlohmann::json CurriculumSchedule::to_json() const {
  return nlohmann::json{
      {"mode", to_string(mode)}, {"bs", bs}, {"phases", phases}};
}

CurriculumSchedule CurriculumSchedule::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("mode") || !j.contains("bs") ||
      !j.contains("phases"))
    throw DataError("schedule json: expected object with mode, bs, phases");
  CurriculumSchedule schedule;
  schedule.mode = scheduler_mode_from_string(j.at("mode").get<std::string>());
  schedule.bs = j.at("bs").get<int>();
  if (schedule.bs < 1) throw DataError("schedule json: bs must be >= 1");
  schedule.phases = j.at("phases").get<std::vector<std::vector<int>>>();
  std::unordered_set<int> seen;
  std::size_t total = 0;
  for (const auto& phase : schedule.phases) {
    for (int id : phase) {
      if (id < 0 || !seen.insert(id).second)
        throw DataError("schedule json: ids must be unique and non-negative");
      ++total;
    }
  }
  for (int id = 0; id < static_cast<int>(total); ++id)
    if (!seen.count(id)) throw DataError("schedule json: ids must cover 0..n-1");
  return schedule;
}

CurriculumSchedule make_schedule(const std::vector<int>& order, int bs,
                                 SchedulerMode mode) {
  require(bs >= 1, "make_schedule: bs must be >= 1");
  CurriculumSchedule schedule;
  schedule.mode = mode;
  schedule.bs = bs;
  const std::size_t n = order.size();
  const std::size_t chunk = static_cast<std::size_t>(bs);
  for (std::size_t start = 0; start < n; start += chunk) {
    const std::size_t stop = std::min(n, start + chunk);
    schedule.phases.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                                 order.begin() + static_cast<std::ptrdiff_t>(stop));
  }
  return schedule;
}

std::vector<int> phase_iterator(const CurriculumSchedule& schedule, std::size_t k,
                                std::uint64_t epoch_seed) {
  std::vector<int> ids = schedule.training_set(k);
  Rng rng(epoch_seed);
  rng.shuffle(ids);
  return ids;
}

}  // namespace senticl
