#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "viewadapt/adapt/heuristics.hpp"
#include "viewadapt/adapt/ladder.hpp"
#include "viewadapt/adapt/oracle.hpp"
#include "viewadapt/errors.hpp"

namespace viewadapt::adapt {
namespace {

const double kSqrt2 = std::sqrt(2.0);

std::vector<StreamDescriptor> three_streams() {
  return {{0, 0, 8.0, 4.0, PriorityClass::C22, {}, {}},
          {1, 0, 8.0, 2.0, PriorityClass::C21, {}, {}},
          {2, 0, 8.0, 1.0, PriorityClass::C11, {}, {}}};
}

std::vector<double> factors_of(const AdaptationPlan& plan) {
  std::vector<double> out;
  for (const auto& s : plan.streams) out.push_back(s.factor);
  return out;
}

TEST(Ladder, Sqrt2Depth4) {
  const auto ladder = build_ladder(kSqrt2, 4);
  EXPECT_EQ(ladder.factors(), testing::reference_factors(4));
  EXPECT_EQ(ladder.divisors(), (std::vector<long long>{1, 2, 3, 4}));
  EXPECT_DOUBLE_EQ(ladder.floor(), 0.25);
}

TEST(Ladder, Sqrt2Depth5AddsOneSixth) {
  const auto ladder = build_ladder(kSqrt2, 5);
  EXPECT_EQ(ladder.factors(), testing::reference_factors(5));
  EXPECT_DOUBLE_EQ(ladder.floor(), 1.0 / 6);
}

TEST(Ladder, IntegerBase) {
  EXPECT_EQ(build_ladder(2.0, 1).factors(), (std::vector<double>{1.0, 0.5}));
  EXPECT_EQ(build_ladder(2.0, 3).divisors(), (std::vector<long long>{1, 2, 4, 8}));
}

TEST(Ladder, RejectsBadParameters) {
  EXPECT_THROW(build_ladder(1.0, 4), InvalidArgument);
  EXPECT_THROW(build_ladder(0.5, 4), InvalidArgument);
  EXPECT_THROW(build_ladder(kSqrt2, 0), InvalidArgument);
  EXPECT_THROW(build_ladder(std::nan(""), 2), InvalidArgument);
}

TEST(Ladder, FactorsStrictlyDescending) {
  for (int depth = 1; depth <= 12; ++depth) {
    const auto ladder = build_ladder(1.1, depth);
    for (std::size_t i = 1; i < ladder.size(); ++i) {
      EXPECT_LT(ladder.factor(i), ladder.factor(i - 1));
    }
  }
}

TEST(MinimumBudget, ThreeEightMbpsStreams) {
  EXPECT_DOUBLE_EQ(minimum_budget(three_streams(), build_ladder(kSqrt2, 4)), 6.0);
  EXPECT_THROW(minimum_budget({}, build_ladder(kSqrt2, 4)), InvalidArgument);
}

TEST(Streams, ValidationRejectsBadInput) {
  auto s = three_streams();
  s[1].site_id = 0;
  EXPECT_THROW(validate_streams(s), InvalidArgument);
  s = three_streams();
  s[0].full_bandwidth = 0.0;
  EXPECT_THROW(validate_streams(s), InvalidArgument);
  s = three_streams();
  s[0].global_priority = -1.0;
  EXPECT_THROW(validate_streams(s), InvalidArgument);
  s = three_streams();
  s[0].arrival_time = 5.0;
  s[0].departure_time = 1.0;
  EXPECT_THROW(validate_streams(s), InvalidArgument);
}

TEST(Compromise, WorkedExample) {
  const auto plan = compromise(three_streams(), build_ladder(kSqrt2, 4), 12.0);
  EXPECT_EQ(factors_of(plan), (std::vector<double>{1.0, 0.25, 0.25}));
  EXPECT_DOUBLE_EQ(plan.total_bandwidth, 12.0);
  EXPECT_DOUBLE_EQ(plan.total_quality, 38.0);
  EXPECT_DOUBLE_EQ(plan.minimum_budget, 6.0);
}

TEST(Compromise, ContinuesFillingLowerPriorityStreams) {
  // After the top stream is restored, 3 Mbps of surplus remain: the p=2
  // stream climbs to 1/3 (costs 2/3) rather than staying on the floor.
  const auto plan = compromise(three_streams(), build_ladder(kSqrt2, 4), 15.0);
  EXPECT_EQ(factors_of(plan)[0], 1.0);
  EXPECT_DOUBLE_EQ(plan.streams[1].factor, 0.5);
  EXPECT_LE(plan.total_bandwidth, 15.0);
}

TEST(RoundRobin, FullBudgetNoCuts) {
  const auto plan = round_robin(three_streams(), build_ladder(kSqrt2, 4), 24.0);
  EXPECT_EQ(factors_of(plan), (std::vector<double>{1.0, 1.0, 1.0}));
}

TEST(RoundRobin, OneCycleOfSingleRungCuts) {
  const auto plan = round_robin(three_streams(), build_ladder(kSqrt2, 4), 14.0);
  EXPECT_DOUBLE_EQ(plan.total_bandwidth, 12.0);
  std::size_t lo = 99, hi = 0;
  for (const auto& s : plan.streams) {
    lo = std::min(lo, s.rung);
    hi = std::max(hi, s.rung);
  }
  EXPECT_LE(hi - lo, 1u);
}

TEST(RoundRobin, StopsMidCycleWithLowPriorityFirst) {
  // 24 -> 20 (p=1 halved) fits 21: the others stay whole.
  const auto plan = round_robin(three_streams(), build_ladder(kSqrt2, 4), 21.0);
  EXPECT_EQ(factors_of(plan), (std::vector<double>{1.0, 1.0, 0.5}));
}

TEST(RoundRobin, FloorBudget) {
  const auto plan = round_robin(three_streams(), build_ladder(kSqrt2, 4), 6.0);
  EXPECT_EQ(factors_of(plan), (std::vector<double>{0.25, 0.25, 0.25}));
}

TEST(Aggressive, CutsLowestPriorityToFloor) {
  const auto plan = aggressive(three_streams(), build_ladder(kSqrt2, 4), 19.0);
  EXPECT_EQ(factors_of(plan), (std::vector<double>{1.0, 1.0, 0.25}));
  EXPECT_DOUBLE_EQ(plan.total_bandwidth, 18.0);
}

TEST(Aggressive, FullAndFloorBudgets) {
  const auto ladder = build_ladder(kSqrt2, 4);
  EXPECT_EQ(factors_of(aggressive(three_streams(), ladder, 24.0)),
            (std::vector<double>{1.0, 1.0, 1.0}));
  EXPECT_EQ(factors_of(aggressive(three_streams(), ladder, 6.0)),
            (std::vector<double>{0.25, 0.25, 0.25}));
}

TEST(Heuristics, InfeasibleAndInvalidBudgets) {
  const auto ladder = build_ladder(kSqrt2, 4);
  for (auto algo : {Algorithm::kCompromise, Algorithm::kRoundRobin, Algorithm::kAggressive,
                    Algorithm::kExact}) {
    try {
      adapt(algo, three_streams(), ladder, 5.0);
      FAIL() << "expected InfeasibleBudget";
    } catch (const InfeasibleBudget& e) {
      EXPECT_DOUBLE_EQ(e.minimum_budget(), 6.0);
      EXPECT_DOUBLE_EQ(e.budget(), 5.0);
    }
    EXPECT_THROW(adapt(algo, three_streams(), ladder, -1.0), InvalidArgument);
    EXPECT_THROW(adapt(algo, three_streams(), ladder, INFINITY), InvalidArgument);
  }
}

TEST(Heuristics, EmptyInputGivesEmptyPlan) {
  const auto plan = compromise({}, build_ladder(kSqrt2, 4), 0.0);
  EXPECT_TRUE(plan.streams.empty());
  EXPECT_EQ(plan.total_quality, 0.0);
}

TEST(Heuristics, TieBreakIsDeterministic) {
  std::vector<StreamDescriptor> s = {{3, 1, 10, 2, PriorityClass::C12, {}, {}},
                                     {1, 0, 10, 2, PriorityClass::C12, {}, {}},
                                     {2, 0, 12, 2, PriorityClass::C12, {}, {}},
                                     {1, 1, 10, 2, PriorityClass::C12, {}, {}}};
  EXPECT_EQ(order_by_priority_descending(s), (std::vector<std::size_t>{2, 1, 3, 0}));
  EXPECT_EQ(order_by_priority_ascending(s), (std::vector<std::size_t>{2, 1, 3, 0}));
}

TEST(Algorithm, RoundTripsNames) {
  for (auto a : {Algorithm::kCompromise, Algorithm::kRoundRobin, Algorithm::kAggressive,
                 Algorithm::kExact}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_FALSE(parse_algorithm("greedy").has_value());
}

TEST(ExactOracle, WorkedExampleAtLeastCompromise) {
  const auto ladder = build_ladder(kSqrt2, 4);
  const auto exact = exact_oracle(three_streams(), ladder, 12.0);
  EXPECT_GE(exact.total_quality, 38.0 - 1e-9);
  EXPECT_LE(exact.total_bandwidth, 12.0 + 1e-9);
  EXPECT_GE(38.0, 0.99 * exact.total_quality);
}

TEST(ExactOracle, MatchesBruteForce) {
  // Bandwidths on a 0.12 Mbps grid make every surplus weight an exact
  // multiple of the 0.01 resolution, so discretization loses nothing.
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> units(20, 120);
  std::uniform_int_distribution<int> prio(1, 9);
  for (int depth : {4, 5}) {
    const auto ladder = build_ladder(kSqrt2, depth);
    const auto factors = testing::reference_factors(depth);
    for (int rep = 0; rep < 60; ++rep) {
      const int n = 1 + rep % 5;
      std::vector<StreamDescriptor> streams;
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        const double bw = 0.12 * units(gen);
        total += bw;
        streams.push_back({i, 0, bw, double(prio(gen)), PriorityClass::C11, {}, {}});
      }
      const double w_min = total * factors.back();
      const double budget = w_min + (total - w_min) * (rep % 11) / 10.0 + 0.005;
      const auto truth = testing::brute_force_best(streams, factors, budget);
      const auto plan = exact_oracle(streams, ladder, budget);
      EXPECT_NEAR(plan.total_quality, truth.quality, 1e-9 * truth.quality)
          << "depth " << depth << " rep " << rep;
      EXPECT_LE(plan.total_bandwidth, budget + 1e-9);
    }
  }
}

TEST(ExactOracle, SingleStream) {
  const std::vector<StreamDescriptor> one = {{0, 0, 10.0, 3.0, PriorityClass::C21, {}, {}}};
  const auto ladder = build_ladder(kSqrt2, 4);
  EXPECT_DOUBLE_EQ(exact_oracle(one, ladder, 10.0).streams[0].factor, 1.0);
  EXPECT_DOUBLE_EQ(exact_oracle(one, ladder, 4.0).streams[0].factor, 1.0 / 3);
  EXPECT_DOUBLE_EQ(exact_oracle(one, ladder, 2.5).streams[0].factor, 0.25);
}

TEST(ExactOracle, RejectsOversizedInstances) {
  std::mt19937_64 gen(3);
  const auto streams = testing::random_streams(gen, 30, 10);
  const auto ladder = build_ladder(kSqrt2, 4);
  const double budget = 0.6 * total_full_bandwidth(streams);
  EXPECT_THROW(exact_oracle(streams, ladder, budget), InstanceTooLarge);
  OracleOptions tight;
  tight.max_cells = 10;
  EXPECT_THROW(exact_oracle(three_streams(), ladder, 12.0, tight), InstanceTooLarge);
}

// Randomized properties shared by every heuristic.
class HeuristicProperties : public ::testing::TestWithParam<Algorithm> {};

TEST_P(HeuristicProperties, BudgetCompletenessAndLadderMembership) {
  const Algorithm algo = GetParam();
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  std::uniform_int_distribution<int> size(1, 12);
  for (int rep = 0; rep < 400; ++rep) {
    const int depth = 4 + rep % 2;
    const auto ladder = build_ladder(kSqrt2, depth);
    const auto streams = testing::random_streams(gen, size(gen), size(gen), 2.0 + rep % 2);
    const double total = total_full_bandwidth(streams);
    const double w_min = total * ladder.floor();
    const double budget = w_min + (total - w_min) * frac(gen);
    const auto plan = adapt(algo, streams, ladder, budget);
    ASSERT_EQ(plan.streams.size(), streams.size());
    EXPECT_TRUE(within_budget(plan.total_bandwidth, budget));
    for (std::size_t i = 0; i < streams.size(); ++i) {
      const auto& a = plan.streams[i];
      EXPECT_EQ(a.stream.site_id, streams[i].site_id);
      EXPECT_EQ(a.stream.camera_id, streams[i].camera_id);
      EXPECT_TRUE(ladder.contains(a.factor));
      EXPECT_GE(a.factor, ladder.floor());
      EXPECT_NEAR(a.adapted_bandwidth, a.stream.full_bandwidth * a.factor,
                  1e-9 * a.adapted_bandwidth);
    }
  }
}

TEST_P(HeuristicProperties, FullBudgetAndFloorIdentities) {
  std::mt19937_64 gen(5);
  const auto ladder = build_ladder(kSqrt2, 5);
  for (int rep = 0; rep < 50; ++rep) {
    const auto streams = testing::random_streams(gen, 1 + rep % 7, 1 + rep % 5);
    const double total = total_full_bandwidth(streams);
    for (const auto& a : adapt(GetParam(), streams, ladder, total).streams) {
      EXPECT_EQ(a.factor, 1.0);
    }
    for (const auto& a : adapt(GetParam(), streams, ladder, total * ladder.floor()).streams) {
      EXPECT_EQ(a.factor, ladder.floor());
    }
  }
}

TEST_P(HeuristicProperties, HigherPriorityNeverGetsLess) {
  // For equal bandwidths a higher priority stream keeps a factor at least as
  // large as a lower priority one.
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  const auto ladder = build_ladder(kSqrt2, 4);
  for (int rep = 0; rep < 200; ++rep) {
    auto streams = testing::random_streams(gen, 6, 4);
    for (auto& s : streams) s.full_bandwidth = 10.0;
    const double total = total_full_bandwidth(streams);
    const double budget = total * (0.25 + 0.75 * frac(gen));
    const auto plan = adapt(GetParam(), streams, ladder, budget);
    for (const auto& a : plan.streams) {
      for (const auto& b : plan.streams) {
        if (a.stream.global_priority > b.stream.global_priority) {
          EXPECT_GE(a.factor, b.factor);
        }
      }
    }
  }
}

TEST_P(HeuristicProperties, Deterministic) {
  std::mt19937_64 gen(17);
  const auto streams = testing::random_streams(gen, 10, 10);
  const auto ladder = build_ladder(kSqrt2, 4);
  const double budget = 0.55 * total_full_bandwidth(streams);
  const auto a = adapt(GetParam(), streams, ladder, budget);
  const auto b = adapt(GetParam(), streams, ladder, budget);
  EXPECT_EQ(factors_of(a), factors_of(b));
  EXPECT_EQ(a.total_quality, b.total_quality);
}

INSTANTIATE_TEST_SUITE_P(All, HeuristicProperties,
                         ::testing::Values(Algorithm::kCompromise, Algorithm::kRoundRobin,
                                           Algorithm::kAggressive),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Compromise, OpCountGrowsLikeNLogN) {
  std::mt19937_64 gen(19);
  const auto ladder = build_ladder(kSqrt2, 4);
  std::vector<double> per;
  for (int sites : {50, 100, 200, 400}) {
    const auto streams = testing::random_streams(gen, sites, 50);
    OpCounter ops;
    compromise(streams, ladder, 0.5 * total_full_bandwidth(streams), &ops);
    const double n = static_cast<double>(streams.size());
    per.push_back(static_cast<double>(ops.total()) / (n * std::log2(n)));
  }
  const auto [lo, hi] = std::minmax_element(per.begin(), per.end());
  EXPECT_LT(*hi / *lo, 1.5);
}

}  // namespace
}  // namespace viewadapt::adapt
