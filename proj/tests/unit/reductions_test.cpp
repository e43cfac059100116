#include "lowspace/reductions.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "lowspace/oracles.hpp"
#include "lowspace/rng.hpp"

namespace lowspace {
namespace {

std::int64_t subset_dot(const std::vector<std::int64_t>& w, std::uint64_t mask) {
  std::int64_t s = 0;
  for (std::size_t b = 0; b < w.size(); ++b)
    if ((mask >> b) & 1) s += w[b];
  return s;
}

bool any_query_hits(const std::vector<EqualityQuery>& qs, std::uint64_t mask) {
  for (const auto& q : qs)
    if (subset_dot(q.omega, mask) == q.target) return true;
  return false;
}

// --- interval reduction ------------------------------------------------------

TEST(IntervalReduction, SmallIntervalEmitsDirectQueries) {
  std::vector<std::int64_t> omega = {1, 2, 3};
  auto qs = interval_to_equalities(omega, 2, 5);
  ASSERT_EQ(qs.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(qs[i].omega, omega);
    EXPECT_EQ(qs[i].target, static_cast<std::int64_t>(2 + i));
  }
}

TEST(IntervalReduction, ZeroWeightsYieldZeroTargetQuery) {
  std::vector<std::int64_t> omega = {0, 0, 0, 0};
  auto qs = interval_to_equalities(omega, -10, 10);
  ASSERT_FALSE(qs.empty());
  bool has_zero = false;
  for (const auto& q : qs) has_zero = has_zero || q.target == 0;
  EXPECT_TRUE(has_zero);
  // every subset hits: all omegas are zero and 0 is among the targets
  for (std::uint64_t mask = 0; mask < 16; ++mask) EXPECT_TRUE(any_query_hits(qs, mask));
}

TEST(IntervalReduction, InvertedIntervalIsEmpty) {
  EXPECT_TRUE(interval_to_equalities({1, 2}, 5, 2).empty());
}

TEST(IntervalReduction, ExactIffOverAllSubsets) {
  SeededRng rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(rng.below(10));
    std::vector<std::int64_t> omega(n);
    for (auto& w : omega) w = rng.range(-100, 100);
    std::int64_t a = rng.range(-300, 300), b = rng.range(-300, 300);
    std::int64_t l = std::min(a, b), u = std::max(a, b);
    auto qs = interval_to_equalities(omega, l, u);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::int64_t s = subset_dot(omega, mask);
      EXPECT_EQ(l <= s && s <= u, any_query_hits(qs, mask))
          << "trial " << trial << " mask " << mask;
    }
  }
}

TEST(IntervalReduction, QueryCountLaw) {
  SeededRng rng(57);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(rng.below(12));
    std::int64_t N = 1 + rng.range(0, 99);
    std::vector<std::int64_t> omega(n);
    for (auto& w : omega) w = rng.range(-N, N);
    // include absurdly wide intervals: clamping must keep the count bounded
    std::int64_t l = rng.range(-1'000'000'000, 0), u = rng.range(0, 1'000'000'000);
    auto qs = interval_to_equalities(omega, l, u);
    double cap = 12.0 * static_cast<double>(n) *
                 (std::log2(static_cast<double>(n) * static_cast<double>(N)) + 2.0);
    EXPECT_LE(static_cast<double>(qs.size()), cap) << "n=" << n << " N=" << N;
  }
}

TEST(IntervalReduction, BlocksShareOmegaPerLevel) {
  std::vector<std::int64_t> omega = {7, -3, 11, 5, -9, 2, 8, -4};
  auto blocks = interval_blocks(omega, -40, 40);
  ASSERT_GT(blocks.size(), 1u);  // wide enough to force recursion
  EXPECT_EQ(blocks[0].omega, omega);
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    for (std::size_t k = 0; k < omega.size(); ++k) {
      // each level halves the previous level's weights (floor toward -inf)
      EXPECT_EQ(blocks[i].omega[k], blocks[i - 1].omega[k] >> 1);
    }
  }
}

// --- base-B combination ------------------------------------------------------

TEST(CombineEqualities, SingleDigitShift) {
  std::vector<EqualityQuery> qs = {{{3, -1, 4}, 2}};
  auto inst = combine_equalities(qs, 32);
  EXPECT_EQ(inst.w, (std::vector<std::int64_t>{96, -32, 128}));
  EXPECT_EQ(inst.t, 64);
}

TEST(CombineEqualities, TwoDigitEquivalenceByEnumeration) {
  SeededRng rng(88);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3;
    std::vector<EqualityQuery> qs(2);
    std::int64_t m_hat = 1;
    for (auto& q : qs) {
      q.omega.resize(n);
      for (auto& w : q.omega) {
        w = rng.range(-4, 4);
        m_hat = std::max(m_hat, std::abs(w));
      }
      q.target = rng.range(-6, 6);
    }
    if (std::abs(qs[0].target) > m_hat * 3 || std::abs(qs[1].target) > m_hat * 3) continue;
    std::int64_t B = std::int64_t{1}
                     << std::bit_width(static_cast<std::uint64_t>(2 * m_hat * 3));
    auto inst = combine_equalities(qs, B);
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      bool all = subset_dot(qs[0].omega, mask) == qs[0].target &&
                 subset_dot(qs[1].omega, mask) == qs[1].target;
      EXPECT_EQ(subset_dot(inst.w, mask) == inst.t, all) << "trial " << trial;
    }
  }
}

TEST(CombineEqualities, AdversarialExtremeDigitsNoCrossTalk) {
  // digit values pinned at +-(m*n): the strengthened base keeps digits apart
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::int64_t mh = 5;
    std::vector<std::int64_t> hi(n, mh), lo(n, -mh);
    std::vector<EqualityQuery> qs = {{hi, static_cast<std::int64_t>(n) * mh},
                                     {lo, -static_cast<std::int64_t>(n) * mh}};
    std::int64_t B = static_cast<std::int64_t>(
        std::bit_ceil(static_cast<std::uint64_t>(2 * mh * static_cast<std::int64_t>(n) + 1)));
    auto inst = combine_equalities(qs, B);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      bool all = subset_dot(qs[0].omega, mask) == qs[0].target &&
                 subset_dot(qs[1].omega, mask) == qs[1].target;
      EXPECT_EQ(subset_dot(inst.w, mask) == inst.t, all);
    }
  }
}

TEST(CombineEqualities, RejectsBadBase) {
  std::vector<EqualityQuery> qs = {{{3, 3, 3}, 0}};
  EXPECT_THROW(combine_equalities(qs, 24), std::invalid_argument);  // not a power of two
  EXPECT_THROW(combine_equalities(qs, 16), std::invalid_argument);  // below 2*m*n+1
  EXPECT_NO_THROW(combine_equalities(qs, 32));
}

TEST(CombineEqualities, RejectsOverflow) {
  std::vector<EqualityQuery> qs(5, EqualityQuery{{1'000'000'000, -1'000'000'000}, 0});
  EXPECT_THROW(combine_equalities(qs, std::int64_t{1} << 32), std::overflow_error);
}

// --- knapsack ----------------------------------------------------------------

TEST(Knapsack, AllValuesZero) {
  auto res = knapsack_solve({{2, 3, 4}, {0, 0, 0}, 5});
  ASSERT_TRUE(res.feasible);
  EXPECT_EQ(res.value, 0);
}

TEST(Knapsack, SingleItemFits) {
  auto res = knapsack_solve({{3}, {5}, 3});
  ASSERT_TRUE(res.feasible);
  EXPECT_EQ(res.value, 5);
  EXPECT_EQ(res.chosen, (std::vector<std::int64_t>{1}));
}

TEST(Knapsack, InfeasibleWhenBudgetUnreachable) {
  // all weights positive and the budget strictly negative: nothing fits
  auto res = knapsack_solve({{2, 5, 1}, {1, 1, 1}, -1});
  EXPECT_FALSE(res.feasible);
}

TEST(Knapsack, NegativeOptimumWhenForcedBelowZero) {
  // only the negative-value item makes the budget reachable
  auto res = knapsack_solve({{-4, 3}, {-7, 2}, -4});
  ASSERT_TRUE(res.feasible);
  EXPECT_EQ(res.value, -7);
  EXPECT_EQ(res.chosen, (std::vector<std::int64_t>{1}));
}

TEST(Knapsack, MatchesOracleOnRandomInstances) {
  SeededRng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(rng.below(10));
    KnapsackInstance inst;
    inst.w.resize(n);
    inst.v.resize(n);
    for (auto& w : inst.w) w = rng.range(-5, 5);
    for (auto& v : inst.v) v = rng.range(-5, 5);
    inst.t = rng.range(-6, 12);
    auto got = knapsack_solve(inst, 900 + static_cast<std::uint64_t>(trial));
    auto want = knapsack_oracle(inst.w, inst.v, inst.t);
    ASSERT_EQ(got.feasible, want.has_value()) << "trial " << trial;
    if (want.has_value()) {
      EXPECT_EQ(got.value, want->best_value) << "trial " << trial;
      std::int64_t wsum = 0, vsum = 0;
      for (std::int64_t i : got.chosen) {
        wsum += inst.w[static_cast<std::size_t>(i - 1)];
        vsum += inst.v[static_cast<std::size_t>(i - 1)];
      }
      EXPECT_LE(wsum, inst.t);
      EXPECT_EQ(vsum, got.value);
    }
  }
}

TEST(Knapsack, DeterministicForFixedSeed) {
  KnapsackInstance inst{{3, -2, 5, 1, -4, 2}, {4, -1, 6, 2, -3, 1}, 4};
  auto a = knapsack_solve(inst, 77);
  auto b = knapsack_solve(inst, 77);
  EXPECT_EQ(a.feasible, b.feasible);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.chosen, b.chosen);
  EXPECT_EQ(a.metrics.field_ops, b.metrics.field_ops);
}

// --- binary linear programming ----------------------------------------------

TEST(Bip, NoConstraintsAllPositiveObjective) {
  BipInstance inst{{3, 1, 4}, {}};
  auto res = bip_solve(inst);
  ASSERT_TRUE(res.feasible);
  EXPECT_EQ(res.objective, 0);
  EXPECT_EQ(res.x, (std::vector<int>{0, 0, 0}));
}

TEST(Bip, ConstraintBlocksNegativePair) {
  // items 1,2 have value -1 each but x1 + x2 <= 0 forbids taking them
  BipInstance inst{{-1, -1, 0, 0}, {{{1, 1, 0, 0}, 0}}};
  auto res = bip_solve(inst);
  ASSERT_TRUE(res.feasible);
  EXPECT_EQ(res.objective, 0);
  EXPECT_EQ(res.x[0] + res.x[1], 0);
}

TEST(Bip, NegativeCoefficientsPullItemsIn) {
  BipInstance inst{{-3, -5, 2}, {{{1, 1, 1}, 2}}};
  auto res = bip_solve(inst);
  ASSERT_TRUE(res.feasible);
  EXPECT_EQ(res.objective, -8);  // items 1 and 2, constraint 1+1 <= 2
  EXPECT_EQ(res.x, (std::vector<int>{1, 1, 0}));
}

TEST(Bip, InfeasibleConstraints) {
  // x1 >= 1 (as -x1 <= -1) and x1 <= 0 cannot both hold
  BipInstance inst{{1, 1}, {{{-1, 0}, -1}, {{1, 0}, 0}}};
  auto res = bip_solve(inst);
  EXPECT_FALSE(res.feasible);
}

TEST(Bip, MatchesOracleOnRandomInstances) {
  SeededRng rng(3111);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(rng.below(9));
    std::size_t d = static_cast<std::size_t>(rng.below(3));
    BipInstance inst;
    inst.v.resize(n);
    for (auto& v : inst.v) v = rng.range(-5, 5);
    std::vector<std::vector<std::int64_t>> as;
    std::vector<std::int64_t> us;
    for (std::size_t j = 0; j < d; ++j) {
      BipConstraint con;
      con.a.resize(n);
      for (auto& c : con.a) c = rng.range(-5, 5);
      con.u = rng.range(-8, 8);
      as.push_back(con.a);
      us.push_back(con.u);
      inst.cons.push_back(std::move(con));
    }
    auto got = bip_solve(inst, 4000 + static_cast<std::uint64_t>(trial));
    auto want = bip_oracle(inst.v, as, us);
    ASSERT_EQ(got.feasible, want.has_value()) << "trial " << trial;
    if (want.has_value()) {
      EXPECT_EQ(got.objective, want->best_objective) << "trial " << trial;
      for (std::size_t j = 0; j < d; ++j) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (got.x[i]) s += as[j][i];
        EXPECT_LE(s, us[j]);
      }
    }
  }
}

TEST(Bip, DeterministicForFixedSeed) {
  BipInstance inst{{-2, 3, -1, 4, 0}, {{{1, -2, 3, 0, 1}, 2}, {{-1, 1, 0, 2, -2}, 1}}};
  auto a = bip_solve(inst, 55);
  auto b = bip_solve(inst, 55);
  EXPECT_EQ(a.feasible, b.feasible);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(a.x, b.x);
}

}  // namespace
}  // namespace lowspace
