#include "entropart/prob.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entropart/detail/compensated_sum.hpp"
#include "entropart/error.hpp"

namespace entropart {

namespace {

// Stride of every full-shape axis inside the sub-shape formed by `group`
// (sorted, 1-based); zero for axes outside the group.
std::vector<Extent> group_strides(const Shape& shape, const AxisSet& group) {
  std::vector<Extent> strides(shape.rank(), 0);
  Extent stride = 1;
  for (const std::size_t axis : group) {
    strides[axis - 1] = stride;
    stride *= shape.factor(axis);
  }
  return strides;
}

// Walks every cell of `shape` in flat order, handing the callback the flat
// position and the digit offsets (0-based) through `fn(y0, digits)`.
template <typename Fn>
void for_each_cell(const Shape& shape, Fn&& fn) {
  const auto factors = shape.factors();
  MultiIndex::Storage digits(shape.rank(), 0);
  for (Extent y0 = 0; y0 < shape.total(); ++y0) {
    fn(y0, digits);
    for (std::size_t k = 0; k < digits.size(); ++k) {
      if (++digits[k] < factors[k]) break;
      digits[k] = 0;
    }
  }
}

Extent offset_in(const std::vector<Extent>& strides,
                 const MultiIndex::Storage& digits) {
  Extent offset = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) offset += digits[k] * strides[k];
  return offset;
}

std::vector<double> collapse(std::vector<detail::CompensatedSum> sums) {
  std::vector<double> out(sums.size());
  std::transform(sums.begin(), sums.end(), out.begin(),
                 [](const detail::CompensatedSum& s) { return s.value(); });
  return out;
}

}  // namespace

RealSequence::RealSequence(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorKind::invalid_argument, "sequence is empty");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorKind::invalid_argument,
                  "value at position " + std::to_string(i + 1) +
                      " is not finite");
    }
  }
}

Distribution Distribution::from_probabilities(std::vector<double> probs,
                                              double tolerance) {
  if (probs.empty()) {
    throw Error(ErrorKind::invalid_distribution, "distribution is empty");
  }
  detail::CompensatedSum total;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0) || !std::isfinite(probs[i])) {
      throw Error(ErrorKind::invalid_distribution,
                  "p(" + std::to_string(i + 1) + ") is negative or not finite");
    }
    total.add(probs[i]);
  }
  if (std::fabs(total.value() - 1.0) > tolerance) {
    throw Error(ErrorKind::invalid_distribution,
                "entries sum to " + std::to_string(total.value()) +
                    ", not 1");
  }
  return Distribution(std::move(probs), Trusted{});
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) {
    throw Error(ErrorKind::invalid_distribution, "distribution is empty");
  }
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)),
                      Trusted{});
}

Distribution normalize(const RealSequence& seq) {
  detail::CompensatedSum total;
  for (const double s : seq.values()) total.add(std::fabs(s));
  const double norm = total.value();
  if (norm == 0.0) {
    throw Error(ErrorKind::degenerate_sequence,
                "all values are zero; nothing to normalize");
  }
  std::vector<double> probs(seq.size());
  std::transform(seq.values().begin(), seq.values().end(), probs.begin(),
                 [norm](double s) { return std::fabs(s) / norm; });
  return Distribution(std::move(probs), Distribution::Trusted{});
}

JointView::JointView(Distribution dist, Shape shape)
    : dist_(std::move(dist)), shape_(std::move(shape)) {
  if (shape_.total() != dist_.size()) {
    throw Error(ErrorKind::shape_mismatch,
                "shape " + shape_.to_string() + " has total " +
                    std::to_string(shape_.total()) +
                    " but the distribution has " +
                    std::to_string(dist_.size()) + " entries");
  }
}

double JointView::at(const MultiIndex& multi) const {
  return dist_[flatten(shape_, multi)];
}

AxisSet normalized_axes(const AxisSet& axes, std::size_t rank) {
  if (axes.empty()) {
    throw Error(ErrorKind::invalid_axes, "axis set is empty");
  }
  AxisSet sorted = axes;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 1 || sorted[i] > rank) {
      throw Error(ErrorKind::invalid_axes,
                  "axis " + std::to_string(sorted[i]) + " outside 1.." +
                      std::to_string(rank));
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw Error(ErrorKind::invalid_axes,
                  "axis " + std::to_string(sorted[i]) + " repeated");
    }
  }
  return sorted;
}

Shape sub_shape(const Shape& shape, const AxisSet& axes) {
  std::vector<Extent> factors;
  factors.reserve(axes.size());
  for (const std::size_t axis : normalized_axes(axes, shape.rank())) {
    factors.push_back(shape.factor(axis));
  }
  return Shape(std::move(factors));
}

Distribution marginal(const JointView& joint, AxisSet kept_axes) {
  kept_axes = normalized_axes(kept_axes, joint.rank());
  const Shape kept = sub_shape(joint.shape(), kept_axes);
  const auto strides = group_strides(joint.shape(), kept_axes);
  const auto probs = joint.distribution().probs();

  std::vector<detail::CompensatedSum> sums(kept.total());
  for_each_cell(joint.shape(), [&](Extent y0, const auto& digits) {
    sums[offset_in(strides, digits)].add(probs[y0]);
  });
  return Distribution(collapse(std::move(sums)), Distribution::Trusted{});
}

JointView marginal_view(const JointView& joint, const AxisSet& kept_axes) {
  return JointView(marginal(joint, kept_axes),
                   sub_shape(joint.shape(), kept_axes));
}

ConditionalTable::ConditionalTable(Shape target_shape, Shape given_shape,
                                   std::vector<double> pair_probs,
                                   std::vector<double> given_marginal)
    : target_shape_(std::move(target_shape)),
      given_shape_(std::move(given_shape)),
      pair_probs_(std::move(pair_probs)),
      given_marginal_(std::move(given_marginal)),
      q_(pair_probs_.size(), 0.0) {
  if (pair_probs_.size() != target_size() * given_size() ||
      given_marginal_.size() != given_size()) {
    throw Error(ErrorKind::shape_mismatch,
                "conditional table dimensions disagree with its shapes");
  }
  for (std::size_t b = 0; b < given_size(); ++b) {
    const double norm = given_marginal_[b];
    if (norm <= 0.0) continue;
    for (std::size_t a = 0; a < target_size(); ++a) {
      q_[b * target_size() + a] = pair_probs_[b * target_size() + a] / norm;
    }
  }
}

std::size_t ConditionalTable::cell(FlatIndex a, FlatIndex b) const {
  if (a.value < 1 || a.value > target_size() || b.value < 1 ||
      b.value > given_size()) {
    throw Error(ErrorKind::invalid_index, "conditional cell out of range");
  }
  return (b.value - 1) * target_size() + (a.value - 1);
}

double ConditionalTable::q(FlatIndex a, FlatIndex b) const {
  return q_[cell(a, b)];
}

double ConditionalTable::pair(FlatIndex a, FlatIndex b) const {
  return pair_probs_[cell(a, b)];
}

double ConditionalTable::given_marginal(FlatIndex b) const {
  if (b.value < 1 || b.value > given_size()) {
    throw Error(ErrorKind::invalid_index, "conditioning value out of range");
  }
  return given_marginal_[b.value - 1];
}

bool ConditionalTable::supported(FlatIndex b) const {
  return given_marginal(b) > 0.0;
}

ConditionalTable conditional(const JointView& joint, const AxisSet& target,
                             const AxisSet& given) {
  const AxisSet target_axes = normalized_axes(target, joint.rank());
  const AxisSet given_axes = normalized_axes(given, joint.rank());
  for (const std::size_t axis : target_axes) {
    if (std::binary_search(given_axes.begin(), given_axes.end(), axis)) {
      throw Error(ErrorKind::invalid_axes,
                  "axis " + std::to_string(axis) +
                      " is both conditioned on and conditioned");
    }
  }
  Shape target_shape = sub_shape(joint.shape(), target_axes);
  Shape given_shape = sub_shape(joint.shape(), given_axes);
  const auto target_strides = group_strides(joint.shape(), target_axes);
  const auto given_strides = group_strides(joint.shape(), given_axes);
  const Extent width = target_shape.total();
  const auto probs = joint.distribution().probs();

  std::vector<detail::CompensatedSum> pair(width * given_shape.total());
  std::vector<detail::CompensatedSum> given_sum(given_shape.total());
  for_each_cell(joint.shape(), [&](Extent y0, const auto& digits) {
    const Extent a = offset_in(target_strides, digits);
    const Extent b = offset_in(given_strides, digits);
    pair[b * width + a].add(probs[y0]);
    given_sum[b].add(probs[y0]);
  });
  return ConditionalTable(std::move(target_shape), std::move(given_shape),
                          collapse(std::move(pair)),
                          collapse(std::move(given_sum)));
}

ConditionalTable conditional(const JointView& joint, std::size_t target_axis,
                             std::size_t given_axis) {
  if (target_axis == given_axis) {
    throw Error(ErrorKind::invalid_axes,
                "target and given axis are both " + std::to_string(target_axis));
  }
  normalized_axes({target_axis, given_axis}, joint.rank());
  AxisSet target;
  for (std::size_t axis = 1; axis <= joint.rank(); ++axis) {
    if (axis != given_axis) target.push_back(axis);
  }
  return conditional(joint, target, AxisSet{given_axis});
}

}  // namespace entropart
