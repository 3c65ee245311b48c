#include "entropart/entropy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "entropart/detail/compensated_sum.hpp"
#include "entropart/error.hpp"

namespace entropart {

namespace {

// Sorted groups; throws unless they are nonempty, disjoint and cover 1..rank.
std::vector<AxisSet> checked_partition(std::vector<AxisSet> groups,
                                       std::size_t rank) {
  std::vector<int> seen(rank + 1, 0);
  for (auto& group : groups) {
    group = normalized_axes(group, rank);
    for (const std::size_t axis : group) {
      if (seen[axis]++) {
        throw Error(ErrorKind::invalid_axes,
                    "axis " + std::to_string(axis) + " appears in two groups");
      }
    }
  }
  for (std::size_t axis = 1; axis <= rank; ++axis) {
    if (!seen[axis]) {
      throw Error(ErrorKind::invalid_axes,
                  "axis " + std::to_string(axis) + " is not in any group");
    }
  }
  return groups;
}

AxisSet merged(const AxisSet& a, const AxisSet& b) {
  AxisSet out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

AxisSet all_axes(std::size_t rank) {
  AxisSet axes(rank);
  std::iota(axes.begin(), axes.end(), std::size_t{1});
  return axes;
}

}  // namespace

LogBase LogBase::custom(double base) {
  if (!std::isfinite(base) || !(base > 1.0)) {
    throw Error(ErrorKind::invalid_argument,
                "log base must be a finite real above 1");
  }
  if (base == 2.0) return two();
  if (base == 10.0) return ten();
  if (base == std::exp(1.0)) return natural();
  return LogBase(Kind::other, base);
}

LogBase LogBase::parse(std::string_view text) {
  if (text == "e") return natural();
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::parse, "cannot parse log base '" +
                                      std::string(text) + "'");
  }
  return custom(value);
}

double LogBase::log(double x) const {
  switch (kind_) {
    case Kind::e: return std::log(x);
    case Kind::two: return std::log2(x);
    case Kind::ten: return std::log10(x);
    case Kind::other: break;
  }
  return std::log(x) / std::log(base_);
}

double LogBase::value() const {
  return kind_ == Kind::e ? std::exp(1.0) : base_;
}

std::string LogBase::label() const {
  switch (kind_) {
    case Kind::e: return "e";
    case Kind::two: return "2";
    case Kind::ten: return "10";
    case Kind::other: break;
  }
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, base_);
  return std::string(buf, ptr);
}

std::string_view to_string(InequalityKind kind) noexcept {
  switch (kind) {
    case InequalityKind::subadditivity: return "subadditivity";
    case InequalityKind::chain_rule: return "chain_rule";
    case InequalityKind::strong_subadditivity: return "strong_subadditivity";
  }
  return "unknown";
}

double shannon(const Distribution& dist, const LogBase& base) {
  detail::CompensatedSum sum;
  for (const double p : dist.probs()) {
    if (p > 0.0) sum.add(-p * base.log(p));
  }
  // Rounding can leave -0 or a few ulps below zero for point masses.
  return std::max(sum.value(), 0.0);
}

double group_entropy(const JointView& joint, const AxisSet& axes,
                     const LogBase& base) {
  return shannon(marginal(joint, axes), base);
}

std::vector<Bipartition> bipartitions(std::size_t rank) {
  std::vector<Bipartition> out;
  if (rank < 2 || rank >= 8 * sizeof(unsigned long)) return out;
  const unsigned long full = (1UL << rank) - 1;
  for (unsigned long mask = 1; mask < full; mask += 2) {
    Bipartition parts;
    for (std::size_t axis = 1; axis <= rank; ++axis) {
      ((mask >> (axis - 1)) & 1UL ? parts.first : parts.second).push_back(axis);
    }
    out.push_back(std::move(parts));
  }
  return out;
}

std::vector<Tripartition> tripartitions(std::size_t rank) {
  std::vector<Tripartition> out;
  if (rank < 3) return out;
  std::size_t codes = 1;
  for (std::size_t k = 0; k < rank; ++k) codes *= 3;
  for (std::size_t code = 0; code < codes; ++code) {
    Tripartition parts;
    std::size_t rest = code;
    for (std::size_t axis = 1; axis <= rank; ++axis, rest /= 3) {
      switch (rest % 3) {
        case 0: parts.first.push_back(axis); break;
        case 1: parts.middle.push_back(axis); break;
        default: parts.last.push_back(axis); break;
      }
    }
    if (parts.first.empty() || parts.middle.empty() || parts.last.empty()) {
      continue;
    }
    if (parts.first.front() > parts.last.front()) continue;
    out.push_back(std::move(parts));
  }
  return out;
}

InequalityReport subadditivity_report(const JointView& joint,
                                      const Bipartition& parts,
                                      const LogBase& base, double tolerance) {
  if (joint.rank() < 2) {
    throw Error(ErrorKind::invalid_axes,
                "subadditivity needs at least two axes");
  }
  auto groups = checked_partition({parts.first, parts.second}, joint.rank());
  const double h_a = group_entropy(joint, groups[0], base);
  const double h_b = group_entropy(joint, groups[1], base);
  const double h_ab = shannon(joint.distribution(), base);
  const double residual = h_a + h_b - h_ab;
  return InequalityReport{
      InequalityKind::subadditivity,
      joint.shape(),
      std::move(groups),
      base,
      tolerance,
      {{"H_A", h_a}, {"H_B", h_b}, {"H_AB", h_ab}},
      residual,
      residual >= -tolerance,
  };
}

double mutual_information(const JointView& joint, const Bipartition& parts,
                          const LogBase& base) {
  return subadditivity_report(joint, parts, base).residual;
}

double conditional_entropy(const JointView& joint, const AxisSet& target,
                           const AxisSet& given, const LogBase& base) {
  const ConditionalTable table = conditional(joint, target, given);
  detail::CompensatedSum sum;
  for (Extent b = 1; b <= table.given_size(); ++b) {
    if (!table.supported(FlatIndex{b})) continue;
    for (Extent a = 1; a <= table.target_size(); ++a) {
      const double p = table.pair(FlatIndex{a}, FlatIndex{b});
      if (p > 0.0) sum.add(-p * base.log(table.q(FlatIndex{a}, FlatIndex{b})));
    }
  }
  return std::max(sum.value(), 0.0);
}

double conditional_entropy(const JointView& joint, std::size_t target_axis,
                           std::size_t given_axis, const LogBase& base) {
  if (target_axis == given_axis) {
    throw Error(ErrorKind::invalid_axes, "target and given axis coincide");
  }
  normalized_axes({target_axis, given_axis}, joint.rank());
  AxisSet target;
  for (std::size_t axis = 1; axis <= joint.rank(); ++axis) {
    if (axis != given_axis) target.push_back(axis);
  }
  return conditional_entropy(joint, target, AxisSet{given_axis}, base);
}

namespace {

struct ChainTerms {
  std::map<std::string, double> entropies;
  double residual;
};

ChainTerms chain_terms(const JointView& joint,
                       const std::vector<std::size_t>& ordering,
                       const LogBase& base) {
  if (ordering.size() != joint.rank()) {
    throw Error(ErrorKind::invalid_axes,
                "ordering must list every axis exactly once");
  }
  checked_partition({ordering}, joint.rank());

  ChainTerms terms;
  const double h_joint = shannon(joint.distribution(), base);
  terms.entropies["H_joint"] = h_joint;
  detail::CompensatedSum expansion;
  AxisSet before;
  std::string before_label;
  for (const std::size_t axis : ordering) {
    const std::string label = "H_" + std::to_string(axis);
    double h = 0.0;
    if (before.empty()) {
      h = group_entropy(joint, {axis}, base);
      terms.entropies[label] = h;
    } else {
      h = conditional_entropy(joint, {axis}, before, base);
      terms.entropies[label + "|" + before_label] = h;
    }
    expansion.add(h);
    before.insert(std::upper_bound(before.begin(), before.end(), axis), axis);
    before_label += (before_label.empty() ? "" : ",") + std::to_string(axis);
  }
  terms.residual = h_joint - expansion.value();
  return terms;
}

}  // namespace

double chain_rule_residual(const JointView& joint,
                           const std::vector<std::size_t>& ordering,
                           const LogBase& base) {
  return chain_terms(joint, ordering, base).residual;
}

InequalityReport chain_rule_report(const JointView& joint,
                                   const std::vector<std::size_t>& ordering,
                                   const LogBase& base, double tolerance) {
  ChainTerms terms = chain_terms(joint, ordering, base);
  std::vector<AxisSet> grouping;
  for (const std::size_t axis : ordering) grouping.push_back({axis});
  return InequalityReport{
      InequalityKind::chain_rule,
      joint.shape(),
      std::move(grouping),
      base,
      tolerance,
      std::move(terms.entropies),
      terms.residual,
      std::fabs(terms.residual) <= tolerance,
  };
}

InequalityReport ssa_report(const JointView& joint, const Tripartition& parts,
                            const LogBase& base, double tolerance) {
  auto groups = checked_partition({parts.first, parts.middle, parts.last},
                                  joint.rank());
  const double h_ab = group_entropy(joint, merged(groups[0], groups[1]), base);
  const double h_bc = group_entropy(joint, merged(groups[1], groups[2]), base);
  const double h_b = group_entropy(joint, groups[1], base);
  const double h_abc = shannon(joint.distribution(), base);
  const double residual = h_ab + h_bc - h_abc - h_b;
  return InequalityReport{
      InequalityKind::strong_subadditivity,
      joint.shape(),
      std::move(groups),
      base,
      tolerance,
      {{"H_AB", h_ab}, {"H_BC", h_bc}, {"H_ABC", h_abc}, {"H_B", h_b}},
      residual,
      residual >= -tolerance,
  };
}

std::vector<InequalityReport> shape_reports(const JointView& joint,
                                            const LogBase& base,
                                            double tolerance) {
  std::vector<InequalityReport> reports;
  if (joint.rank() < 2) return reports;
  reports.push_back(
      chain_rule_report(joint, all_axes(joint.rank()), base, tolerance));
  for (const auto& parts : bipartitions(joint.rank())) {
    reports.push_back(subadditivity_report(joint, parts, base, tolerance));
  }
  for (const auto& parts : tripartitions(joint.rank())) {
    reports.push_back(ssa_report(joint, parts, base, tolerance));
  }
  return reports;
}

bool ScanResult::all_hold() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const InequalityReport& r) { return r.holds; });
}

ScanResult scan(const Distribution& dist, std::size_t max_parts,
                const LogBase& base, double tolerance) {
  ScanResult result;
  for (auto& shape : factorizations(dist.size(), max_parts)) {
    if (shape.rank() < 2) continue;
    const JointView joint(dist, shape);
    auto reports = shape_reports(joint, base, tolerance);
    result.reports.insert(result.reports.end(),
                          std::make_move_iterator(reports.begin()),
                          std::make_move_iterator(reports.end()));
    result.shapes.push_back(std::move(shape));
  }
  if (result.shapes.empty()) {
    const std::string n = std::to_string(dist.size());
    if (factorizations(dist.size(), 2).size() == 1) {
      result.notes.push_back("N=" + n +
                             " is prime or 1: no nontrivial virtual "
                             "subsystems, only the trivial shape (" +
                             n + ") exists");
    } else {
      result.notes.push_back("max_parts=" + std::to_string(max_parts) +
                             " admits only the trivial shape (" + n + ")");
    }
  }
  return result;
}

}  // namespace entropart
