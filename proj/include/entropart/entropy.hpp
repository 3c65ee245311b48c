#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "entropart/prob.hpp"

namespace entropart {

inline constexpr double kDefaultTolerance = 1e-12;

/// Logarithm base for entropies. e, 2 and 10 use the dedicated library
/// logarithms; any other base b > 1 divides natural logs by ln b.
class LogBase {
 public:
  static LogBase natural() { return LogBase(Kind::e, 0.0); }
  static LogBase two() { return LogBase(Kind::two, 2.0); }
  static LogBase ten() { return LogBase(Kind::ten, 10.0); }
  /// Throws invalid_argument unless base > 1 and finite.
  static LogBase custom(double base);
  /// "e", "2" or "10" (other numeric strings become custom bases).
  static LogBase parse(std::string_view text);

  double log(double x) const;
  double value() const;
  std::string label() const;

  friend bool operator==(const LogBase&, const LogBase&) = default;

 private:
  enum class Kind { e, two, ten, other };
  LogBase(Kind kind, double base) : kind_(kind), base_(base) {}

  Kind kind_;
  double base_;
};

enum class InequalityKind { subadditivity, chain_rule, strong_subadditivity };

std::string_view to_string(InequalityKind kind) noexcept;

/// One evaluated entropic relation. `residual` is recomputable from
/// `entropies`; `holds` is residual >= -tolerance for the inequalities and
/// |residual| <= tolerance for the chain rule.
struct InequalityReport {
  InequalityKind kind;
  Shape shape;
  std::vector<AxisSet> grouping;
  LogBase base;
  double tolerance;
  std::map<std::string, double> entropies;
  double residual;
  bool holds;
};

/// -sum p log p with 0 log 0 = 0.
double shannon(const Distribution& dist, const LogBase& base = LogBase::natural());

/// Entropy of the marginal on `axes`.
double group_entropy(const JointView& joint, const AxisSet& axes,
                     const LogBase& base = LogBase::natural());

/// Two disjoint nonempty axis groups covering every axis.
struct Bipartition {
  AxisSet first;
  AxisSet second;
};

/// Three disjoint nonempty axis groups covering every axis; `middle` is the
/// conditioning system B of H(AB) + H(BC) >= H(ABC) + H(B).
struct Tripartition {
  AxisSet first;
  AxisSet middle;
  AxisSet last;
};

/// Unordered {S, complement}, S containing axis 1, ordered by bitmask.
std::vector<Bipartition> bipartitions(std::size_t rank);

/// Every (A, B, C) assignment with all groups nonempty, modulo swapping A
/// and C (smallest axis of A below smallest axis of C).
std::vector<Tripartition> tripartitions(std::size_t rank);

/// residual = H(A) + H(B) - H(AB). Throws invalid_axes for a grouping that
/// does not partition the axes.
InequalityReport subadditivity_report(const JointView& joint,
                                      const Bipartition& parts,
                                      const LogBase& base = LogBase::natural(),
                                      double tolerance = kDefaultTolerance);

double mutual_information(const JointView& joint, const Bipartition& parts,
                          const LogBase& base = LogBase::natural());

/// H(target | given) = -sum p(a,b) log Q(a|b) over supported rows.
double conditional_entropy(const JointView& joint, const AxisSet& target,
                           const AxisSet& given,
                           const LogBase& base = LogBase::natural());

/// Single-axis form; for n > 2 the remaining axes join the target.
double conditional_entropy(const JointView& joint, std::size_t target_axis,
                           std::size_t given_axis,
                           const LogBase& base = LogBase::natural());

/// H(joint) - [H(A_1) + sum_k H(A_k | A_1 ... A_{k-1})] for a permutation of
/// the axes.
double chain_rule_residual(const JointView& joint,
                           const std::vector<std::size_t>& ordering,
                           const LogBase& base = LogBase::natural());

InequalityReport chain_rule_report(const JointView& joint,
                                   const std::vector<std::size_t>& ordering,
                                   const LogBase& base = LogBase::natural(),
                                   double tolerance = kDefaultTolerance);

/// residual = H(AB) + H(BC) - H(ABC) - H(B), the conditional mutual
/// information I(A;C|B).
InequalityReport ssa_report(const JointView& joint, const Tripartition& parts,
                            const LogBase& base = LogBase::natural(),
                            double tolerance = kDefaultTolerance);

/// Chain rule in natural order, then every bipartition, then every
/// tripartition (rank >= 3). Empty for a single-axis shape.
std::vector<InequalityReport> shape_reports(
    const JointView& joint, const LogBase& base = LogBase::natural(),
    double tolerance = kDefaultTolerance);

struct ScanResult {
  std::vector<Shape> shapes;
  std::vector<InequalityReport> reports;
  std::vector<std::string> notes;

  bool all_hold() const;
};

/// shape_reports for every nontrivial shape of factorizations(N, max_parts),
/// in that order. A prime (or unit) N yields no reports and a note.
ScanResult scan(const Distribution& dist, std::size_t max_parts,
                const LogBase& base = LogBase::natural(),
                double tolerance = kDefaultTolerance);

}  // namespace entropart
