#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "entropart/index_map.hpp"

namespace entropart {

inline constexpr double kSumTolerance = 1e-12;

/// Finite real numbers s_1, ..., s_N (N >= 1).
class RealSequence {
 public:
  /// Throws invalid_argument on an empty list or a non-finite value.
  explicit RealSequence(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

/// Probability vector p(1), ..., p(N) over a flat index.
class Distribution {
 public:
  /// Validates nonnegativity and that the entries sum to 1 within
  /// `tolerance`; throws invalid_distribution otherwise.
  static Distribution from_probabilities(std::vector<double> probs,
                                         double tolerance = kSumTolerance);

  static Distribution uniform(std::size_t n);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](FlatIndex y) const { return probs_.at(y.value - 1); }

  friend bool operator==(const Distribution&, const Distribution&) = default;

  /// Internal: entries already known to be a distribution (sums computed
  /// from a validated source).
  struct Trusted {};
  Distribution(std::vector<double> probs, Trusted) : probs_(std::move(probs)) {}

 private:
  std::vector<double> probs_;
};

/// p(y) = |s_y| / sum |s_y'|. Throws degenerate_sequence when every value is
/// zero.
Distribution normalize(const RealSequence& seq);

/// A distribution read through a Shape: entry (x_1..x_n) is p(flatten(x)).
class JointView {
 public:
  /// Throws shape_mismatch when shape.total() != dist.size().
  JointView(Distribution dist, Shape shape);

  const Distribution& distribution() const noexcept { return dist_; }
  const Shape& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.rank(); }

  double at(const MultiIndex& multi) const;

 private:
  Distribution dist_;
  Shape shape_;
};

inline JointView as_joint(Distribution dist, Shape shape) {
  return JointView(std::move(dist), std::move(shape));
}

/// 1-based axis numbers.
using AxisSet = std::vector<std::size_t>;

/// Sorted copy of `axes`; throws invalid_axes when empty, out of range or
/// repeated.
AxisSet normalized_axes(const AxisSet& axes, std::size_t rank);

/// Factors of `axes` (ascending) as their own shape.
Shape sub_shape(const Shape& shape, const AxisSet& axes);

/// Sums over every axis not in `kept_axes`. The result is indexed by the
/// flatten of the kept axes' sub-shape, kept axes in ascending order.
Distribution marginal(const JointView& joint, AxisSet kept_axes);

/// The marginal together with its sub-shape.
JointView marginal_view(const JointView& joint, const AxisSet& kept_axes);

/// Q(a|b) = p(a,b) / Pi(b) with a ranging over the flattened target group
/// and b over the flattened given group. Rows with Pi(b) = 0 are flagged
/// unsupported and hold zeros.
class ConditionalTable {
 public:
  ConditionalTable(Shape target_shape, Shape given_shape,
                   std::vector<double> pair_probs,
                   std::vector<double> given_marginal);

  const Shape& target_shape() const noexcept { return target_shape_; }
  const Shape& given_shape() const noexcept { return given_shape_; }
  std::size_t target_size() const noexcept { return target_shape_.total(); }
  std::size_t given_size() const noexcept { return given_shape_.total(); }

  /// 1-based flat positions inside the target and given groups.
  double q(FlatIndex a, FlatIndex b) const;
  double pair(FlatIndex a, FlatIndex b) const;
  double given_marginal(FlatIndex b) const;
  bool supported(FlatIndex b) const;

 private:
  std::size_t cell(FlatIndex a, FlatIndex b) const;

  Shape target_shape_;
  Shape given_shape_;
  std::vector<double> pair_probs_;
  std::vector<double> given_marginal_;
  std::vector<double> q_;
};

/// Conditional of the `target` axis group on the disjoint `given` group;
/// axes in neither are summed out.
ConditionalTable conditional(const JointView& joint, const AxisSet& target,
                             const AxisSet& given);

/// Single-axis form; for n > 2 every axis other than `given_axis` joins the
/// target group.
ConditionalTable conditional(const JointView& joint, std::size_t target_axis,
                             std::size_t given_axis);

}  // namespace entropart
