#include "entropart/clebsch_gordan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "entropart/error.hpp"

namespace entropart {

namespace {

int half_of(int even) { return even / 2; }

bool triangle_ok(int a, int b, int c) {
  return c >= std::abs(a - b) && c <= a + b && (a + b + c) % 2 == 0;
}

void check_projection(const char* name, int twice_j, int twice_m) {
  if (twice_j < 0) {
    throw Error(ErrorKind::invalid_couple,
                std::string("spin ") + name + " is negative");
  }
  if (std::abs(twice_m) > twice_j || (twice_j - twice_m) % 2 != 0) {
    throw Error(ErrorKind::invalid_projection,
                std::string("projection of ") + name + " is " +
                    HalfInt{twice_m}.to_string() + ", not one of -" +
                    HalfInt{twice_j}.to_string() + "..." +
                    HalfInt{twice_j}.to_string());
  }
}

std::vector<BigInt> factorials(int up_to) {
  std::vector<BigInt> table(static_cast<std::size_t>(up_to) + 1);
  table[0] = 1;
  for (int n = 1; n <= up_to; ++n) table[n] = table[n - 1] * n;
  return table;
}

}  // namespace

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

ExactReal::ExactReal(int sign, Rational radicand)
    : sign_(sign), radicand_(std::move(radicand)) {
  if (radicand_ < 0 || sign_ < -1 || sign_ > 1 ||
      (sign_ == 0) != (radicand_ == 0)) {
    throw Error(ErrorKind::invalid_argument,
                "exact real needs sign in {-1,0,1} matching its radicand");
  }
}

double ExactReal::to_double() const {
  return sign_ * std::sqrt(radicand_.convert_to<double>());
}

std::string SpinCouple::to_string() const {
  return "j1=" + j1.to_string() + " j2=" + j2.to_string() +
         " j=" + j.to_string() + " m=" + m.to_string();
}

void validate_couple(const SpinCouple& c) {
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::invalid_couple, c.to_string() + ": " + why);
  };
  if (c.j1.twice < 0 || c.j2.twice < 0 || c.j.twice < 0) {
    fail("spins must be nonnegative");
  }
  if (!triangle_ok(c.j1.twice, c.j2.twice, c.j.twice)) {
    fail("violates |j1-j2| <= j <= j1+j2 with j1+j2+j integral");
  }
  if (std::abs(c.m.twice) > c.j.twice || (c.j.twice - c.m.twice) % 2 != 0) {
    fail("m must be one of -j, -j+1, ..., j");
  }
}

ExactReal cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j,
             HalfInt m) {
  check_projection("j1", j1.twice, m1.twice);
  check_projection("j2", j2.twice, m2.twice);
  check_projection("j", j.twice, m.twice);
  const int a = j1.twice, b = j2.twice, c = j.twice;
  if (m.twice != m1.twice + m2.twice || !triangle_ok(a, b, c)) {
    return ExactReal::zero();
  }

  // Integer arguments of the factorials, in units of 1 (not 1/2).
  const int s_ab_c = half_of(a + b - c);
  const int s_a_bc = half_of(a - b + c);
  const int s_b_ac = half_of(-a + b + c);
  const int s_abc1 = half_of(a + b + c) + 1;
  const int j_plus_m = half_of(c + m.twice), j_minus_m = half_of(c - m.twice);
  const int j1_plus = half_of(a + m1.twice), j1_minus = half_of(a - m1.twice);
  const int j2_plus = half_of(b + m2.twice), j2_minus = half_of(b - m2.twice);
  const auto fact = factorials(s_abc1);

  const Rational triangle =
      Rational(fact[s_ab_c] * fact[s_a_bc] * fact[s_b_ac], fact[s_abc1]);
  const BigInt projections = fact[j_plus_m] * fact[j_minus_m] *
                             fact[j1_plus] * fact[j1_minus] * fact[j2_plus] *
                             fact[j2_minus];

  // k runs where every factorial argument below is nonnegative.
  const int shift_a = half_of(c - b + m1.twice);  // j - j2 + m1
  const int shift_b = half_of(c - a - m2.twice);  // j - j1 - m2
  const int k_min = std::max({0, -shift_a, -shift_b});
  const int k_max = std::min({s_ab_c, j1_minus, j2_plus});
  Rational sum = 0;
  for (int k = k_min; k <= k_max; ++k) {
    const BigInt denom = fact[k] * fact[s_ab_c - k] * fact[j1_minus - k] *
                         fact[j2_plus - k] * fact[shift_a + k] *
                         fact[shift_b + k];
    const Rational term(BigInt(1), denom);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  if (sum == 0) return ExactReal::zero();
  const int sign = sum > 0 ? 1 : -1;
  return ExactReal(sign, Rational(c + 1) * triangle * projections * sum * sum);
}

LoweringOracle::LoweringOracle(HalfInt j1, HalfInt j2)
    : a_(j1.twice), b_(j2.twice) {
  if (a_ < 0 || b_ < 0) {
    throw Error(ErrorKind::invalid_couple, "spins must be nonnegative");
  }
  const std::size_t dim = static_cast<std::size_t>((a_ + 1) * (b_ + 1));
  // One vector per (J, M) with J from |j1-j2| to j1+j2.
  std::size_t count = 0;
  for (int tj = std::abs(a_ - b_); tj <= a_ + b_; tj += 2) count += tj + 1;
  states_.assign(count, std::vector<double>(dim, 0.0));

  // sqrt(j(j+1) - m(m-1)) from twice-values.
  const auto ladder = [](int tj, int tm) {
    return std::sqrt(static_cast<double>(tj * (tj + 2) - tm * (tm - 2)) / 4.0);
  };

  for (int tj = a_ + b_; tj >= std::abs(a_ - b_); tj -= 2) {
    std::vector<double>& top = states_[state_index(tj, tj)];
    if (tj == a_ + b_) {
      top[basis_index(a_, b_)] = 1.0;
    } else {
      // The M = J subspace minus the higher-J states living in it.
      double best_norm = -1.0;
      for (int tm1 = -a_; tm1 <= a_; tm1 += 2) {
        const int tm2 = tj - tm1;
        if (std::abs(tm2) > b_) continue;
        std::vector<double> v(dim, 0.0);
        v[basis_index(tm1, tm2)] = 1.0;
        for (int higher = tj + 2; higher <= a_ + b_; higher += 2) {
          const auto& u = states_[state_index(higher, tj)];
          double overlap = 0.0;
          for (std::size_t i = 0; i < dim; ++i) overlap += u[i] * v[i];
          for (std::size_t i = 0; i < dim; ++i) v[i] -= overlap * u[i];
        }
        double norm = 0.0;
        for (const double x : v) norm += x * x;
        if (norm > best_norm) {
          best_norm = norm;
          top = std::move(v);
        }
      }
      const double scale = 1.0 / std::sqrt(best_norm);
      for (double& x : top) x *= scale;
      // Condon-Shortley: <j1 j1 j2 (J-j1) | J J> > 0.
      if (top[basis_index(a_, tj - a_)] < 0.0) {
        for (double& x : top) x = -x;
      }
    }

    for (int tm = tj; tm > -tj; tm -= 2) {
      const auto& from = states_[state_index(tj, tm)];
      auto& to = states_[state_index(tj, tm - 2)];
      for (int tm1 = -a_; tm1 <= a_; tm1 += 2) {
        for (int tm2 = -b_; tm2 <= b_; tm2 += 2) {
          const double amp = from[basis_index(tm1, tm2)];
          if (amp == 0.0) continue;
          if (tm1 > -a_) to[basis_index(tm1 - 2, tm2)] += amp * ladder(a_, tm1);
          if (tm2 > -b_) to[basis_index(tm1, tm2 - 2)] += amp * ladder(b_, tm2);
        }
      }
      const double norm = ladder(tj, tm);
      for (double& x : to) x /= norm;
    }
  }
}

std::size_t LoweringOracle::basis_index(int twice_m1, int twice_m2) const {
  return static_cast<std::size_t>(half_of(twice_m2 + b_) * (a_ + 1) +
                                  half_of(twice_m1 + a_));
}

std::size_t LoweringOracle::state_index(int twice_j, int twice_m) const {
  std::size_t offset = 0;
  for (int tj = std::abs(a_ - b_); tj < twice_j; tj += 2) offset += tj + 1;
  return offset + static_cast<std::size_t>(half_of(twice_m + twice_j));
}

double LoweringOracle::coefficient(HalfInt m1, HalfInt m2, HalfInt j,
                                   HalfInt m) const {
  if (std::abs(m1.twice) > a_ || (a_ - m1.twice) % 2 != 0 ||
      std::abs(m2.twice) > b_ || (b_ - m2.twice) % 2 != 0 ||
      std::abs(m.twice) > j.twice || (j.twice - m.twice) % 2 != 0 ||
      !triangle_ok(a_, b_, j.twice) || m.twice != m1.twice + m2.twice) {
    return 0.0;
  }
  return states_[state_index(j.twice, m.twice)][basis_index(m1.twice, m2.twice)];
}

double cg_oracle(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j,
                 HalfInt m) {
  check_projection("j1", j1.twice, m1.twice);
  check_projection("j2", j2.twice, m2.twice);
  check_projection("j", j.twice, m.twice);
  if (!triangle_ok(j1.twice, j2.twice, j.twice)) return 0.0;
  return LoweringOracle(j1, j2).coefficient(m1, m2, j, m);
}

std::vector<Rational> CGTable::exact_probabilities() const {
  std::vector<Rational> probs;
  probs.reserve(entries.size());
  for (const auto& entry : entries) probs.push_back(entry.value.squared());
  return probs;
}

Distribution CGTable::distribution() const {
  std::vector<double> probs;
  probs.reserve(entries.size());
  for (const auto& entry : entries) {
    probs.push_back(entry.value.squared().convert_to<double>());
  }
  return Distribution::from_probabilities(std::move(probs));
}

CGTable cg_squared_table(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m) {
  const SpinCouple couple{j1, j2, j, m};
  validate_couple(couple);
  Shape shape{static_cast<Extent>(j1.twice + 1),
              static_cast<Extent>(j2.twice + 1)};
  std::vector<CGEntry> entries;
  entries.reserve(shape.total());
  for (Extent y = 1; y <= shape.total(); ++y) {
    const MultiIndex x = unflatten(shape, FlatIndex{y});
    // m_i = x_i - j_i - 1, in twice-units.
    const HalfInt m1{2 * static_cast<int>(x[0]) - j1.twice - 2};
    const HalfInt m2{2 * static_cast<int>(x[1]) - j2.twice - 2};
    entries.push_back({m1, m2, cg(j1, m1, j2, m2, j, m)});
  }
  return CGTable{couple, std::move(shape), std::move(entries)};
}

InequalityReport cg_subadditivity(HalfInt j1, HalfInt j2, HalfInt j,
                                  HalfInt m, const LogBase& base,
                                  double tolerance) {
  const CGTable table = cg_squared_table(j1, j2, j, m);
  const JointView joint(table.distribution(), table.shape);
  return subadditivity_report(joint, Bipartition{{1}, {2}}, base, tolerance);
}

InequalityReport cg_ssa(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m,
                        const Shape& triple_shape, const LogBase& base,
                        double tolerance) {
  const CGTable table = cg_squared_table(j1, j2, j, m);
  if (triple_shape.rank() != 3 || triple_shape.total() != table.shape.total()) {
    throw Error(ErrorKind::shape_mismatch,
                "SSA needs a three-factor shape of total " +
                    std::to_string(table.shape.total()) + ", got " +
                    triple_shape.to_string());
  }
  const Distribution f = table.distribution();
  std::vector<double> g(triple_shape.total());
  for (Extent y = 1; y <= triple_shape.total(); ++y) {
    const MultiIndex t = unflatten(triple_shape, FlatIndex{y});
    const MultiIndex x = rebase(triple_shape, table.shape, t);
    g[y - 1] = f[flatten(table.shape, x)];
  }
  const JointView joint(Distribution(std::move(g), Distribution::Trusted{}),
                        triple_shape);
  return ssa_report(joint, Tripartition{{1}, {2}, {3}}, base, tolerance);
}

std::optional<Shape> default_triple_shape(Extent n) {
  std::optional<Shape> pair;
  for (auto& shape : factorizations(n, 3)) {
    if (shape.rank() == 3) return shape;
    if (shape.rank() == 2 && !pair) pair = shape;
  }
  if (pair) return Shape{pair->factor(1), 1, pair->factor(2)};
  return std::nullopt;
}

std::vector<Shape> triple_shapes(Extent n) {
  std::vector<Shape> shapes;
  for (Extent t1 = 1; t1 <= n; ++t1) {
    if (n % t1 != 0) continue;
    const Extent rest = n / t1;
    for (Extent t2 = 1; t2 <= rest; ++t2) {
      if (rest % t2 == 0) shapes.push_back(Shape{t1, t2, rest / t2});
    }
  }
  return shapes;
}

std::vector<SpinCouple> all_couples(int max_twice) {
  std::vector<SpinCouple> couples;
  for (int a = 0; a <= max_twice; ++a) {
    for (int b = 0; b <= max_twice; ++b) {
      for (int c = std::abs(a - b); c <= a + b; c += 2) {
        for (int tm = -c; tm <= c; tm += 2) {
          couples.push_back({HalfInt{a}, HalfInt{b}, HalfInt{c}, HalfInt{tm}});
        }
      }
    }
  }
  return couples;
}

}  // namespace entropart
