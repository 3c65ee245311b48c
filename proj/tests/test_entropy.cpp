#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "entropart/entropy.hpp"
#include "entropart/error.hpp"

namespace entropart {
namespace {

const double kLog2 = std::log(2.0);

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
  v[n - 1] += 1e-3;
  return normalize(RealSequence(std::move(v)));
}

Distribution product(const std::vector<double>& u, const std::vector<double>& v) {
  std::vector<double> p;
  for (double b : v) {
    for (double a : u) p.push_back(a * b);
  }
  return Distribution::from_probabilities(std::move(p));
}

// -sum p ln p over a plain vector, without any of the library's summation.
double naive_h(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0) h -= x * std::log(x);
  }
  return h;
}

TEST(Shannon, Examples) {
  for (std::size_t n : {1u, 2u, 7u, 64u}) {
    EXPECT_NEAR(shannon(Distribution::uniform(n)), std::log(double(n)), 1e-14);
  }
  EXPECT_EQ(shannon(Distribution::from_probabilities({0, 1, 0})), 0.0);
  EXPECT_DOUBLE_EQ(
      shannon(Distribution::from_probabilities({0.5, 0.25, 0.25}), LogBase::two()),
      1.5);
}

TEST(LogBase, ParseAndValidate) {
  EXPECT_EQ(LogBase::parse("e"), LogBase::natural());
  EXPECT_EQ(LogBase::parse("2"), LogBase::two());
  EXPECT_EQ(LogBase::parse("10"), LogBase::ten());
  EXPECT_DOUBLE_EQ(LogBase::parse("3").log(9.0), 2.0);
  EXPECT_EQ(kind_of([] { LogBase::custom(1.0); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { LogBase::custom(0.5); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { LogBase::parse("x"); }), ErrorKind::parse);
}

TEST(Subadditivity, Examples) {
  const JointView prod =
      as_joint(product({0.1, 0.2, 0.7}, {0.5, 0.5}), Shape{3, 2});
  const InequalityReport r = subadditivity_report(prod, {{1}, {2}});
  EXPECT_NEAR(r.residual, 0.0, 1e-12);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.kind, InequalityKind::subadditivity);

  for (std::size_t d : {2u, 3u, 5u}) {
    std::vector<double> diag(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) diag[i * d + i] = 1.0 / double(d);
    const JointView j =
        as_joint(Distribution::from_probabilities(diag), Shape{d, d});
    EXPECT_NEAR(subadditivity_report(j, {{1}, {2}}).residual,
                std::log(double(d)), 1e-12);
    EXPECT_NEAR(mutual_information(j, {{1}, {2}}), std::log(double(d)), 1e-12);
  }

  const JointView singlet = as_joint(
      Distribution::from_probabilities({0, 0.5, 0.5, 0}), Shape{2, 2});
  const InequalityReport s = subadditivity_report(singlet, {{1}, {2}});
  EXPECT_NEAR(s.residual, kLog2, 1e-15);
  EXPECT_NEAR(s.entropies.at("H_A"), kLog2, 1e-15);
  EXPECT_NEAR(s.entropies.at("H_B"), kLog2, 1e-15);
  EXPECT_NEAR(s.entropies.at("H_AB"), kLog2, 1e-15);
}

TEST(Subadditivity, InvalidGrouping) {
  const JointView j = as_joint(Distribution::uniform(8), Shape{2, 2, 2});
  EXPECT_EQ(kind_of([&] { subadditivity_report(j, {{1}, {2}}); }),
            ErrorKind::invalid_axes);
  EXPECT_EQ(kind_of([&] { subadditivity_report(j, {{1, 2}, {2, 3}}); }),
            ErrorKind::invalid_axes);
  EXPECT_EQ(kind_of([&] { subadditivity_report(j, {{}, {1, 2, 3}}); }),
            ErrorKind::invalid_axes);
}

TEST(Subadditivity, MatchesNaiveEntropies) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Extent a = 2 + trial % 4, b = 1 + trial % 5;
    const Distribution d = random_dist(rng, a * b, 0.2);
    std::vector<double> pa(a, 0.0), pb(b, 0.0);
    const std::vector<double> p(d.probs().begin(), d.probs().end());
    for (Extent y = 0; y < a * b; ++y) {
      pa[y % a] += p[y];
      pb[y / a] += p[y];
    }
    const double expect = naive_h(pa) + naive_h(pb) - naive_h(p);
    const JointView j = as_joint(d, Shape{a, b});
    EXPECT_NEAR(mutual_information(j, {{1}, {2}}), expect, 1e-12);
    EXPECT_NEAR(mutual_information(j, {{2}, {1}}), expect, 1e-12);
  }
}

TEST(Subadditivity, RandomShapesHold) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<Extent> n_dist(2, 256);
  for (int trial = 0; trial < 300; ++trial) {
    const Extent n = n_dist(rng);
    const auto shapes = factorizations(n, 4);
    const Shape& shape = shapes[trial % shapes.size()];
    if (shape.rank() < 2) continue;
    const JointView j = as_joint(random_dist(rng, n, 0.3), shape);
    for (const Bipartition& parts : bipartitions(shape.rank())) {
      const InequalityReport r = subadditivity_report(j, parts);
      EXPECT_GE(r.residual, -1e-12);
      EXPECT_TRUE(r.holds);
      const InequalityReport swapped =
          subadditivity_report(j, {parts.second, parts.first});
      EXPECT_NEAR(r.residual, swapped.residual, 1e-14);
    }
  }
}

TEST(ConditionalEntropy, Examples) {
  const std::vector<double> u{0.1, 0.2, 0.7};
  const JointView prod = as_joint(product(u, {0.4, 0.6}), Shape{3, 2});
  EXPECT_NEAR(conditional_entropy(prod, 1, 2), naive_h(u), 1e-12);

  // x1 = x2 mod 2 + 1.
  const JointView det = as_joint(
      Distribution::from_probabilities({0, 0.3, 0.2, 0, 0, 0.5}), Shape{2, 3});
  EXPECT_NEAR(conditional_entropy(det, 1, 2), 0.0, 1e-15);

  const JointView singlet = as_joint(
      Distribution::from_probabilities({0, 0.5, 0.5, 0}), Shape{2, 2});
  EXPECT_NEAR(conditional_entropy(singlet, 1, 2), 0.0, 1e-15);
  EXPECT_NEAR(conditional_entropy(singlet, 2, 1), 0.0, 1e-15);
  EXPECT_EQ(kind_of([&] { conditional_entropy(singlet, 2, 2); }),
            ErrorKind::invalid_axes);
}

TEST(ChainRule, AllOrderings) {
  std::mt19937_64 rng(29);
  for (const Shape& shape :
       {Shape{3, 4}, Shape{2, 3, 4}, Shape{2, 2, 2}, Shape{5, 1, 3}}) {
    for (int trial = 0; trial < 50; ++trial) {
      const JointView j = as_joint(random_dist(rng, shape.total(), 0.25), shape);
      std::vector<std::size_t> order(shape.rank());
      std::iota(order.begin(), order.end(), 1);
      do {
        EXPECT_LE(std::fabs(chain_rule_residual(j, order)), 1e-12);
        const InequalityReport r = chain_rule_report(j, order);
        EXPECT_TRUE(r.holds);
        EXPECT_EQ(r.kind, InequalityKind::chain_rule);
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
}

TEST(ChainRule, ProductTermsAreMarginals) {
  const std::vector<double> u{0.1, 0.9}, v{0.2, 0.3, 0.5};
  const JointView j = as_joint(product(u, v), Shape{2, 3});
  const InequalityReport r = chain_rule_report(j, {1, 2});
  EXPECT_NEAR(r.entropies.at("H_1"), naive_h(u), 1e-15);
  EXPECT_NEAR(r.entropies.at("H_2|1"), naive_h(v), 1e-12);
  EXPECT_EQ(kind_of([&] { chain_rule_residual(j, {1, 1}); }),
            ErrorKind::invalid_axes);
  EXPECT_EQ(kind_of([&] { chain_rule_residual(j, {1}); }),
            ErrorKind::invalid_axes);
}

TEST(StrongSubadditivity, Examples) {
  const Distribution p3 = Distribution::from_probabilities([] {
    std::vector<double> p;
    for (double c : {0.3, 0.7}) {
      for (double b : {0.2, 0.8}) {
        for (double a : {0.6, 0.4}) p.push_back(a * b * c);
      }
    }
    return p;
  }());
  const InequalityReport r =
      ssa_report(as_joint(p3, Shape{2, 2, 2}), {{1}, {2}, {3}});
  EXPECT_NEAR(r.residual, 0.0, 1e-12);
  EXPECT_EQ(r.kind, InequalityKind::strong_subadditivity);

  // A = B = C uniform over 3 values.
  std::vector<double> diag(27, 0.0);
  for (int i = 0; i < 3; ++i) diag[i + 3 * i + 9 * i] = 1.0 / 3;
  const InequalityReport eq = ssa_report(
      as_joint(Distribution::from_probabilities(diag), Shape{3, 3, 3}),
      {{1}, {2}, {3}});
  EXPECT_NEAR(eq.residual, 0.0, 1e-12);
  EXPECT_NEAR(eq.entropies.at("H_AB"), std::log(3.0), 1e-12);
}

TEST(StrongSubadditivity, RandomHold) {
  std::mt19937_64 rng(31);
  for (const Shape& shape : {Shape{2, 2, 2}, Shape{2, 3, 4}, Shape{2, 2, 3, 2}}) {
    const auto parts = tripartitions(shape.rank());
    for (int trial = 0; trial < 300; ++trial) {
      const JointView j = as_joint(random_dist(rng, shape.total(), 0.2), shape);
      for (const Tripartition& t : parts) {
        const InequalityReport r = ssa_report(j, t);
        EXPECT_GE(r.residual, -1e-12);
        EXPECT_TRUE(r.holds);
      }
    }
  }
}

TEST(Partitions, Counts) {
  // 2^(n-1) - 1 unordered bipartitions; (3^n - 3 * 2^n + 3) / 2 ordered-up-to-
  // swap tripartitions.
  for (std::size_t n = 2; n <= 6; ++n) {
    EXPECT_EQ(bipartitions(n).size(), (std::size_t{1} << (n - 1)) - 1);
    std::size_t p3 = 1, p2 = 1;
    for (std::size_t i = 0; i < n; ++i) {
      p3 *= 3;
      p2 *= 2;
    }
    EXPECT_EQ(tripartitions(n).size(), (p3 - 3 * p2 + 3) / 2);
    for (const Bipartition& b : bipartitions(n)) {
      EXPECT_EQ(b.first.front(), 1u);
      EXPECT_EQ(b.first.size() + b.second.size(), n);
    }
  }
  EXPECT_TRUE(tripartitions(2).empty());
}

TEST(Scan, Examples) {
  const ScanResult uniform = scan(Distribution::uniform(8), 3);
  EXPECT_FALSE(uniform.reports.empty());
  for (const InequalityReport& r : uniform.reports) {
    EXPECT_NEAR(r.residual, 0.0, 1e-12);
  }
  EXPECT_TRUE(uniform.all_hold());
  EXPECT_EQ(uniform.shapes.size(), 3u);

  std::mt19937_64 rng(37);
  const ScanResult prime = scan(random_dist(rng, 7), 3);
  EXPECT_TRUE(prime.reports.empty());
  ASSERT_EQ(prime.notes.size(), 1u);
  EXPECT_NE(prime.notes[0].find("prime"), std::string::npos);

  std::vector<double> pm(8, 0.0);
  pm[5] = 1.0;
  const ScanResult point = scan(Distribution::from_probabilities(pm), 3);
  for (const InequalityReport& r : point.reports) {
    EXPECT_EQ(r.residual, 0.0);
    EXPECT_TRUE(r.holds);
    for (const auto& [name, h] : r.entropies) EXPECT_EQ(h, 0.0) << name;
  }
}

TEST(Scan, ReportOrderFollowsShapes) {
  std::mt19937_64 rng(41);
  const ScanResult s = scan(random_dist(rng, 16), 3);
  const std::vector<Shape> expect = factorizations(16, 3);
  ASSERT_EQ(s.shapes.size() + 1, expect.size());
  for (std::size_t i = 0; i < s.shapes.size(); ++i) {
    EXPECT_EQ(s.shapes[i], expect[i + 1]);
  }
  std::size_t k = 0;
  for (const Shape& shape : s.shapes) {
    const std::size_t count = 1 + bipartitions(shape.rank()).size() +
                              tripartitions(shape.rank()).size();
    for (std::size_t i = 0; i < count; ++i, ++k) {
      ASSERT_LT(k, s.reports.size());
      EXPECT_EQ(s.reports[k].shape, shape);
    }
  }
  EXPECT_EQ(k, s.reports.size());
}

TEST(Shannon, ConcaveUnderMixing) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> lam(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 20;
    const Distribution p = random_dist(rng, n, 0.3);
    const Distribution q = random_dist(rng, n, 0.3);
    const double l = lam(rng);
    std::vector<double> mix(n);
    for (std::size_t i = 0; i < n; ++i) {
      mix[i] = l * p.probs()[i] + (1 - l) * q.probs()[i];
    }
    const double h = shannon(Distribution::from_probabilities(mix));
    EXPECT_GE(h, l * shannon(p) + (1 - l) * shannon(q) - 1e-12);
  }
}

TEST(LogBase, ScalingKeepsVerdicts) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const JointView j = as_joint(random_dist(rng, 24, 0.3), Shape{2, 3, 4});
    const auto nat = shape_reports(j, LogBase::natural());
    for (const LogBase& base : {LogBase::two(), LogBase::ten()}) {
      const auto other = shape_reports(j, base);
      ASSERT_EQ(nat.size(), other.size());
      for (std::size_t i = 0; i < nat.size(); ++i) {
        EXPECT_NEAR(other[i].residual, nat[i].residual / std::log(base.value()),
                    1e-12);
        EXPECT_EQ(other[i].holds, nat[i].holds);
        for (const auto& [name, h] : nat[i].entropies) {
          EXPECT_NEAR(other[i].entropies.at(name), h / std::log(base.value()),
                      1e-12);
        }
      }
    }
  }
}

}  // namespace
}  // namespace entropart
