#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "doctest.h"
#include "senticl/curriculum.hpp"
#include "senticl/errors.hpp"
#include "senticl/rng.hpp"

using namespace senticl;

namespace {

Strategy scored(std::vector<double> scores) {
  return Strategy::sentiwordnet(std::move(scores));
}

std::vector<double> random_scores(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> s(n);
  for (double& x : s) x = rng.uniform(0.0, 2.0);
  return s;
}

// The invariants every schedule must satisfy for score-based strategies.
void check_schedule_invariants(const CurriculumSchedule& schedule,
                               const std::vector<double>& scores) {
  const std::size_t n = scores.size();
  // Coverage: each id new exactly once.
  std::vector<int> seen(n, 0);
  for (const auto& phase : schedule.phases)
    for (int id : phase) {
      REQUIRE(id >= 0);
      REQUIRE(static_cast<std::size_t>(id) < n);
      seen[static_cast<std::size_t>(id)] += 1;
    }
  for (std::size_t i = 0; i < n; ++i) REQUIRE(seen[i] == 1);

  // Monotone chunk boundaries: max score in phase k <= min score in k+1.
  for (std::size_t k = 0; k + 1 < schedule.phases.size(); ++k) {
    double hi = -1e300, lo = 1e300;
    for (int id : schedule.phases[k])
      hi = std::max(hi, scores[static_cast<std::size_t>(id)]);
    for (int id : schedule.phases[k + 1])
      lo = std::min(lo, scores[static_cast<std::size_t>(id)]);
    REQUIRE(hi <= lo);
  }

  // Baby Steps cumulative sets form an inclusion chain.
  if (schedule.mode == SchedulerMode::baby_steps) {
    std::vector<int> prev;
    for (std::size_t k = 0; k < schedule.phase_count(); ++k) {
      std::vector<int> cur = schedule.training_set(k);
      REQUIRE(cur.size() ==
              prev.size() + schedule.phases[k].size());
      REQUIRE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      prev = std::move(cur);
    }
  }
}

}  // namespace

TEST_SUITE("curriculum") {

TEST_CASE("rank sorts ascending by score") {
  auto order = rank(scored({0.3, 0.1, 0.9}), 3, 0);
  CHECK(order == std::vector<int>{1, 0, 2});
}

TEST_CASE("rank breaks ties by ascending id") {
  auto order = rank(scored({0.5, 0.5}), 2, 0);
  CHECK(order == std::vector<int>{0, 1});
}

TEST_CASE("sentence length orders shorter sentences first") {
  std::vector<Example> examples(2);
  examples[0].tokens.assign(7, "w");
  examples[1].tokens.assign(2, "w");
  Strategy s = Strategy::sentence_length(examples);
  CHECK(rank(s, 2, 0) == std::vector<int>{1, 0});
}

TEST_CASE("`none` is a seeded uniform shuffle") {
  Strategy s = Strategy::none();
  auto a = rank(s, 100, 42);
  auto b = rank(s, 100, 42);
  auto c = rank(s, 100, 43);
  CHECK(a == b);
  CHECK(a != c);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(100);
  std::iota(expected.begin(), expected.end(), 0);
  CHECK(sorted == expected);
}

TEST_CASE("rank rejects a score list of the wrong length") {
  CHECK_THROWS_AS(rank(scored({0.1, 0.2}), 3, 0), std::invalid_argument);
}

TEST_CASE("rank is invariant under strictly increasing transforms") {
  auto scores = random_scores(257, 9);
  std::vector<double> transformed;
  for (double s : scores) transformed.push_back(2.0 * s + 1.0);
  CHECK(rank(scored(scores), scores.size(), 0) ==
        rank(scored(transformed), scores.size(), 0));
}

TEST_CASE("schedule chunks of n=10 bs=4") {
  std::vector<int> order(10);
  std::iota(order.begin(), order.end(), 0);

  SUBCASE("baby steps accumulates") {
    CurriculumSchedule s = make_schedule(order, 4, SchedulerMode::baby_steps);
    REQUIRE(s.phase_count() == 3);
    CHECK(s.phases[0].size() == 4);
    CHECK(s.phases[1].size() == 4);
    CHECK(s.phases[2].size() == 2);
    CHECK(s.training_set(0).size() == 4);
    CHECK(s.training_set(1).size() == 8);
    CHECK(s.training_set(2).size() == 10);
  }
  SUBCASE("one pass trains each chunk alone") {
    CurriculumSchedule s = make_schedule(order, 4, SchedulerMode::one_pass);
    REQUIRE(s.phase_count() == 3);
    CHECK(s.training_set(0).size() == 4);
    CHECK(s.training_set(1).size() == 4);
    CHECK(s.training_set(2).size() == 2);
  }
  SUBCASE("bs >= n degenerates to a single phase") {
    CurriculumSchedule s = make_schedule(order, 25, SchedulerMode::baby_steps);
    REQUIRE(s.phase_count() == 1);
    CHECK(s.training_set(0).size() == 10);
  }
  SUBCASE("bs < 1 is an error") {
    CHECK_THROWS_AS(make_schedule(order, 0, SchedulerMode::baby_steps),
                    std::invalid_argument);
  }
}

TEST_CASE("phase_iterator yields the phase training set, shuffled per seed") {
  std::vector<double> scores(10);
  for (std::size_t i = 0; i < 10; ++i) scores[i] = static_cast<double>(i);
  auto order = rank(scored(scores), 10, 0);  // identity here
  CurriculumSchedule baby = make_schedule(order, 4, SchedulerMode::baby_steps);

  auto stream = phase_iterator(baby, 1, 77);
  std::set<int> members(stream.begin(), stream.end());
  // Phase 2 (index 1) of Baby Steps trains on the first 8 curriculum ids.
  std::set<int> expected(order.begin(), order.begin() + 8);
  CHECK(stream.size() == 8);
  CHECK(members == expected);
  CHECK(phase_iterator(baby, 1, 77) == stream);  // same seed, same permutation
  CHECK(phase_iterator(baby, 1, 78) != stream);

  CurriculumSchedule pass = make_schedule(order, 4, SchedulerMode::one_pass);
  auto chunk = phase_iterator(pass, 1, 5);
  std::set<int> chunk_members(chunk.begin(), chunk.end());
  std::set<int> chunk_expected(order.begin() + 4, order.begin() + 8);
  CHECK(chunk_members == chunk_expected);

  CHECK_THROWS_AS(phase_iterator(baby, 3, 0), std::invalid_argument);
}

TEST_CASE("schedule invariants hold for random scores and varied bs") {
  for (std::size_t n : {1u, 13u, 200u}) {
    auto scores = random_scores(n, 1000 + n);
    auto order = rank(scored(scores), n, 0);
    for (int bs : {1, 7, static_cast<int>(n), static_cast<int>(n) + 5}) {
      if (bs < 1) continue;
      for (SchedulerMode mode :
           {SchedulerMode::baby_steps, SchedulerMode::one_pass}) {
        CurriculumSchedule schedule = make_schedule(order, bs, mode);
        check_schedule_invariants(schedule, scores);
      }
    }
  }
}

TEST_CASE("schedule json round-trips and is validated") {
  std::vector<int> order{3, 1, 4, 0, 2};
  CurriculumSchedule s = make_schedule(order, 2, SchedulerMode::one_pass);
  CurriculumSchedule back = CurriculumSchedule::from_json(s.to_json());
  CHECK(back.mode == s.mode);
  CHECK(back.bs == s.bs);
  CHECK(back.phases == s.phases);

  SUBCASE("duplicate ids are rejected") {
    nlohmann::json j = s.to_json();
    j["phases"][0][0] = 1;  // 1 already appears
    CHECK_THROWS_AS(CurriculumSchedule::from_json(j), DataError);
  }
  SUBCASE("non-contiguous ids are rejected") {
    nlohmann::json j = s.to_json();
    j["phases"][0][0] = 99;
    CHECK_THROWS_AS(CurriculumSchedule::from_json(j), DataError);
  }
  SUBCASE("bad bs is rejected") {
    nlohmann::json j = s.to_json();
    j["bs"] = 0;
    CHECK_THROWS_AS(CurriculumSchedule::from_json(j), DataError);
  }
  SUBCASE("missing keys are rejected") {
    CHECK_THROWS_AS(CurriculumSchedule::from_json(nlohmann::json::object()),
                    DataError);
  }
}

TEST_CASE("strategy and mode names round-trip") {
  for (StrategyKind k : {StrategyKind::sentiwordnet, StrategyKind::sentence_length,
                         StrategyKind::none})
    CHECK(strategy_kind_from_string(to_string(k)) == k);
  for (SchedulerMode m : {SchedulerMode::baby_steps, SchedulerMode::one_pass})
    CHECK(scheduler_mode_from_string(to_string(m)) == m);
  CHECK_THROWS(strategy_kind_from_string("hardest_first"));
  CHECK_THROWS(scheduler_mode_from_string("two_pass"));
}

}  // TEST_SUITE
