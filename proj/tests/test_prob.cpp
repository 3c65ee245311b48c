#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "entropart/error.hpp"
#include "entropart/prob.hpp"

namespace entropart {
namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an entropart::Error";
  return ErrorKind::parse;
}

Distribution random_dist(std::mt19937_64& rng, std::size_t n,
                         double zero_rate = 0.0) {
  std::exponential_distribution<double> gamma1(1.0);
  std::bernoulli_distribution drop(zero_rate);
  std::vector<double> v(n);
  for (auto& x : v) x = drop(rng) ? 0.0 : gamma1(rng);
  v[0] += 1e-3;
  return normalize(RealSequence(std::move(v)));
}

Distribution point_mass(std::size_t n, std::size_t y) {
  std::vector<double> v(n, 0.0);
  v[y - 1] = 1.0;
  return Distribution::from_probabilities(std::move(v));
}

double sum(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize(RealSequence({3, -1})).probs()[0], 0.75);
  EXPECT_EQ(normalize(RealSequence({3, -1})).probs()[1], 0.25);
  const Distribution d = normalize(RealSequence({1, -1, 1, -1}));
  for (double p : d.probs()) EXPECT_EQ(p, 0.25);
  EXPECT_EQ(kind_of([] { normalize(RealSequence({0, 0, 0})); }),
            ErrorKind::degenerate_sequence);
}

TEST(Normalize, RejectsEmptyAndNonFinite) {
  EXPECT_EQ(kind_of([] { RealSequence({}); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { RealSequence({1.0, NAN}); }),
            ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { RealSequence({INFINITY}); }),
            ErrorKind::invalid_argument);
}

TEST(Normalize, InvariantUnderSignFlipAndScaling) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (std::size_t trial = 0; trial < 200; ++trial) {
    std::vector<double> s(1 + trial % 17);
    for (auto& x : s) x = normal(rng);
    const double c = (trial % 2 ? -1.0 : 1.0) * scale(rng);
    std::vector<double> t(s);
    for (auto& x : t) x *= c;
    const Distribution a = normalize(RealSequence(s));
    const Distribution b = normalize(RealSequence(t));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(a.probs()[i], b.probs()[i], 1e-15);
    }
    EXPECT_NEAR(sum(a.probs()), 1.0, 1e-12);
  }
}

TEST(Distribution, Validation) {
  EXPECT_EQ(kind_of([] { Distribution::from_probabilities({0.5, 0.6}); }),
            ErrorKind::invalid_distribution);
  EXPECT_EQ(kind_of([] { Distribution::from_probabilities({1.5, -0.5}); }),
            ErrorKind::invalid_distribution);
  EXPECT_EQ(Distribution::uniform(4).probs()[3], 0.25);
  EXPECT_EQ(point_mass(8, 6)[FlatIndex{6}], 1.0);
}

TEST(AsJoint, Examples) {
  const JointView u = as_joint(Distribution::uniform(8), Shape{4, 2});
  EXPECT_EQ(u.at(MultiIndex{2, 2}), 1.0 / 8);
  const JointView p = as_joint(point_mass(8, 6), Shape{4, 2});
  EXPECT_EQ(p.at(MultiIndex{2, 2}), 1.0);
  EXPECT_EQ(p.at(MultiIndex{1, 2}), 0.0);
  EXPECT_EQ(kind_of([] { as_joint(Distribution::uniform(8), Shape{3, 3}); }),
            ErrorKind::shape_mismatch);
}

TEST(Marginal, Examples) {
  const JointView u = as_joint(Distribution::uniform(8), Shape{4, 2});
  const Distribution m1 = marginal(u, {1});
  ASSERT_EQ(m1.size(), 4u);
  for (double p : m1.probs()) EXPECT_DOUBLE_EQ(p, 0.25);

  const JointView p = as_joint(point_mass(8, 6), Shape{4, 2});
  const Distribution m2 = marginal(p, {2});
  ASSERT_EQ(m2.size(), 2u);
  EXPECT_EQ(m2.probs()[0], 0.0);
  EXPECT_EQ(m2.probs()[1], 1.0);

  std::mt19937_64 rng(3);
  const Distribution d = random_dist(rng, 24);
  EXPECT_EQ(marginal(as_joint(d, Shape{2, 3, 4}), {3, 1, 2}), d);
}

TEST(Marginal, MatchesDirectSum) {
  // p(x1,x2,x3) read straight from the flat layout y = x1 + 2(x2-1) + 6(x3-1).
  std::mt19937_64 rng(11);
  const Distribution d = random_dist(rng, 24, 0.3);
  const JointView j = as_joint(d, Shape{2, 3, 4});
  const auto p = [&](int a, int b, int c) {
    return d.probs()[(a - 1) + 2 * (b - 1) + 6 * (c - 1)];
  };
  const Distribution m13 = marginal(j, {1, 3});
  for (int a = 1; a <= 2; ++a) {
    for (int c = 1; c <= 4; ++c) {
      double expect = 0.0;
      for (int b = 1; b <= 3; ++b) expect += p(a, b, c);
      EXPECT_NEAR(m13.probs()[(a - 1) + 2 * (c - 1)], expect, 1e-15);
    }
  }
  const Distribution m2 = marginal(j, {2});
  for (int b = 1; b <= 3; ++b) {
    double expect = 0.0;
    for (int a = 1; a <= 2; ++a) {
      for (int c = 1; c <= 4; ++c) expect += p(a, b, c);
    }
    EXPECT_NEAR(m2.probs()[b - 1], expect, 1e-15);
  }
}

TEST(Marginal, ComposesAndSumsToOne) {
  std::mt19937_64 rng(5);
  for (Extent trial = 0; trial < 100; ++trial) {
    const Shape shape{2 + trial % 3, 3, 1 + trial % 4};
    const JointView j = as_joint(random_dist(rng, shape.total()), shape);
    const Distribution direct = marginal(j, {1});
    const Distribution nested = marginal(marginal_view(j, {1, 2}), {1});
    ASSERT_EQ(direct.size(), nested.size());
    for (std::size_t i = 0; i < direct.size(); ++i) {
      EXPECT_NEAR(direct.probs()[i], nested.probs()[i], 1e-15);
    }
    for (const AxisSet& axes :
         {AxisSet{1}, AxisSet{2}, AxisSet{3}, AxisSet{1, 3}, AxisSet{2, 3}}) {
      EXPECT_NEAR(sum(marginal(j, axes).probs()), 1.0, 1e-12);
    }
  }
}

TEST(Marginal, InvalidAxes) {
  const JointView j = as_joint(Distribution::uniform(8), Shape{4, 2});
  EXPECT_EQ(kind_of([&] { marginal(j, {}); }), ErrorKind::invalid_axes);
  EXPECT_EQ(kind_of([&] { marginal(j, {3}); }), ErrorKind::invalid_axes);
  EXPECT_EQ(kind_of([&] { marginal(j, {0}); }), ErrorKind::invalid_axes);
  EXPECT_EQ(kind_of([&] { marginal(j, {1, 1}); }), ErrorKind::invalid_axes);
}

TEST(Conditional, ProductGivesFactor) {
  const std::vector<double> u{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> v{0.25, 0.75, 0.0};
  std::vector<double> p;
  for (double b : v) {
    for (double a : u) p.push_back(a * b);
  }
  const JointView j = as_joint(Distribution::from_probabilities(p), Shape{4, 3});
  const ConditionalTable q = conditional(j, 1, 2);
  EXPECT_TRUE(q.supported(FlatIndex{1}));
  EXPECT_TRUE(q.supported(FlatIndex{2}));
  EXPECT_FALSE(q.supported(FlatIndex{3}));
  for (Extent b = 1; b <= 2; ++b) {
    for (Extent a = 1; a <= 4; ++a) {
      EXPECT_NEAR(q.q(FlatIndex{a}, FlatIndex{b}), u[a - 1], 1e-15);
    }
  }
  for (Extent a = 1; a <= 4; ++a) EXPECT_EQ(q.q(FlatIndex{a}, FlatIndex{3}), 0.0);
}

TEST(Conditional, PointMass) {
  const JointView j = as_joint(point_mass(8, 6), Shape{4, 2});
  const ConditionalTable q = conditional(j, 1, 2);
  EXPECT_EQ(q.q(FlatIndex{2}, FlatIndex{2}), 1.0);
  EXPECT_FALSE(q.supported(FlatIndex{1}));
  EXPECT_EQ(kind_of([&] { conditional(j, 1, 1); }), ErrorKind::invalid_axes);
  EXPECT_EQ(kind_of([&] { conditional(j, 1, 3); }), ErrorKind::invalid_axes);
  EXPECT_EQ(kind_of([&] { conditional(j, AxisSet{1, 2}, AxisSet{2}); }),
            ErrorKind::invalid_axes);
}

TEST(Conditional, RowsNormalizeAndReconstruct) {
  std::mt19937_64 rng(13);
  for (Extent trial = 0; trial < 100; ++trial) {
    const Shape shape{2 + trial % 3, 3, 2};
    const JointView j =
        as_joint(random_dist(rng, shape.total(), 0.4), shape);
    for (const auto& [target, given] :
         std::vector<std::pair<AxisSet, AxisSet>>{
             {{1}, {2}}, {{2}, {1, 3}}, {{1, 3}, {2}}, {{3}, {1}}}) {
      const ConditionalTable q = conditional(j, target, given);
      const Distribution mt = marginal(j, target);
      const Distribution mg = marginal(j, given);
      ASSERT_EQ(q.target_size(), mt.size());
      ASSERT_EQ(q.given_size(), mg.size());
      for (Extent b = 1; b <= q.given_size(); ++b) {
        EXPECT_NEAR(q.given_marginal(FlatIndex{b}), mg.probs()[b - 1], 1e-15);
        if (!q.supported(FlatIndex{b})) continue;
        double row = 0.0;
        for (Extent a = 1; a <= q.target_size(); ++a) {
          row += q.q(FlatIndex{a}, FlatIndex{b});
        }
        EXPECT_NEAR(row, 1.0, 1e-12);
      }
      for (Extent a = 1; a <= q.target_size(); ++a) {
        double rebuilt = 0.0;
        for (Extent b = 1; b <= q.given_size(); ++b) {
          rebuilt += q.given_marginal(FlatIndex{b}) *
                     q.q(FlatIndex{a}, FlatIndex{b});
        }
        EXPECT_NEAR(rebuilt, mt.probs()[a - 1], 1e-12);
      }
    }
  }
}

TEST(Conditional, SingleAxisMergesTheRest) {
  std::mt19937_64 rng(17);
  const JointView j = as_joint(random_dist(rng, 12), Shape{2, 3, 2});
  const ConditionalTable merged = conditional(j, 1, 2);
  const ConditionalTable grouped = conditional(j, AxisSet{1, 3}, AxisSet{2});
  ASSERT_EQ(merged.target_size(), 4u);
  for (Extent b = 1; b <= 3; ++b) {
    for (Extent a = 1; a <= 4; ++a) {
      EXPECT_EQ(merged.q(FlatIndex{a}, FlatIndex{b}),
                grouped.q(FlatIndex{a}, FlatIndex{b}));
    }
  }
}

}  // namespace
}  // namespace entropart
