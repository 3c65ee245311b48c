#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "entropart/entropy.hpp"
#include "entropart/index_map.hpp"
#include "entropart/prob.hpp"

namespace entropart {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Spin or projection stored as twice its value, so 3/2 is {3}.
struct HalfInt {
  int twice = 0;

  static HalfInt from_twice(int t) { return HalfInt{t}; }
  bool is_integer() const noexcept { return twice % 2 == 0; }
  double value() const noexcept { return twice / 2.0; }
  std::string to_string() const;

  friend auto operator<=>(const HalfInt&, const HalfInt&) = default;
};

/// sign * sqrt(radicand), radicand an exact nonnegative rational.
class ExactReal {
 public:
  ExactReal() = default;
  /// Throws invalid_argument for a negative radicand or a sign that
  /// disagrees with a zero radicand.
  ExactReal(int sign, Rational radicand);

  static ExactReal zero() { return ExactReal(); }

  int sign() const noexcept { return sign_; }
  const Rational& radicand() const noexcept { return radicand_; }
  /// The exact square.
  const Rational& squared() const noexcept { return radicand_; }
  bool is_zero() const noexcept { return sign_ == 0; }
  double to_double() const;

  friend bool operator==(const ExactReal&, const ExactReal&) = default;

 private:
  int sign_ = 0;
  Rational radicand_ = 0;
};

/// (j1, j2) coupled to (j, m).
struct SpinCouple {
  HalfInt j1;
  HalfInt j2;
  HalfInt j;
  HalfInt m;

  std::string to_string() const;
};

/// Throws invalid_couple unless the spins are nonnegative, obey the
/// triangle rule with j1 + j2 + j integral, and |m| <= j with m = j mod 1.
void validate_couple(const SpinCouple& couple);

/// <j1 m1 j2 m2 | j m> in the Condon-Shortley convention, evaluated exactly
/// with Racah's single-sum formula. Zero when m != m1 + m2 or the triangle
/// rule fails. Throws invalid_projection when |m_i| > j_i (or |m| > j) or a
/// projection has the wrong parity.
ExactReal cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j,
             HalfInt m);

/// Same coefficient computed in floating point by building every coupled
/// state |j m> from the stretched state with the lowering operator and
/// Gram-Schmidt; shares no code with `cg`.
double cg_oracle(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j,
                 HalfInt m);

/// All coupled states of j1 x j2 expanded in the product basis, built once.
class LoweringOracle {
 public:
  LoweringOracle(HalfInt j1, HalfInt j2);

  /// <j1 m1 j2 m2 | j m>; zero outside the valid ranges.
  double coefficient(HalfInt m1, HalfInt m2, HalfInt j, HalfInt m) const;

 private:
  std::size_t basis_index(int twice_m1, int twice_m2) const;
  std::size_t state_index(int twice_j, int twice_m) const;

  int a_;
  int b_;
  std::vector<std::vector<double>> states_;
};

struct CGEntry {
  HalfInt m1;
  HalfInt m2;
  ExactReal value;
};

/// Coefficients of one |j m> over the (2j1+1) x (2j2+1) grid, listed in flat
/// order y with m_i = x_i - j_i - 1.
struct CGTable {
  SpinCouple couple;
  Shape shape;
  std::vector<CGEntry> entries;

  /// Exact f(y) = |<m1(y) m2(y) | j m>|^2.
  std::vector<Rational> exact_probabilities() const;
  Distribution distribution() const;
};

/// Throws invalid_couple for an invalid couple.
CGTable cg_squared_table(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m);

/// Subadditivity of the two spin axes of f(y) viewed as (2j1+1, 2j2+1).
InequalityReport cg_subadditivity(HalfInt j1, HalfInt j2, HalfInt j,
                                  HalfInt m,
                                  const LogBase& base = LogBase::natural(),
                                  double tolerance = kDefaultTolerance);

/// f(y) carried onto `triple_shape` through index rebasing, then strong
/// subadditivity with A, B, C the three axes. Throws shape_mismatch unless
/// the shape has three factors with total (2j1+1)(2j2+1).
InequalityReport cg_ssa(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m,
                        const Shape& triple_shape,
                        const LogBase& base = LogBase::natural(),
                        double tolerance = kDefaultTolerance);

/// The first three-part shape of factorizations(n, 3); failing that, (a,1,b)
/// from the first two-part factorization; nothing for prime n or n = 1.
std::optional<Shape> default_triple_shape(Extent n);

/// Every ordered (T1, T2, T3) with factors >= 1 and product n.
std::vector<Shape> triple_shapes(Extent n);

/// Every valid (j1, j2, j, m) with 2 j1, 2 j2 <= max_twice.
std::vector<SpinCouple> all_couples(int max_twice);

}  // namespace entropart
