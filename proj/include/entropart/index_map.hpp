#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace entropart {

using Extent = std::uint64_t;

/// Ordered factor list (X_1, ..., X_n) partitioning N = X_1 * ... * X_n.
///
/// Axis 1 is the fastest-running digit of the flat index, so for (4,2) the
/// flat order is (1,1), (2,1), (3,1), (4,1), (1,2), ...
class Shape {
 public:
  /// Throws invalid_shape when the list is empty, a factor is zero or the
  /// product overflows 64 bits.
  explicit Shape(std::vector<Extent> factors);
  Shape(std::initializer_list<Extent> factors)
      : Shape(std::vector<Extent>(factors)) {}

  /// Parses "4x2" (also accepts 'X' and ',').
  static Shape parse(std::string_view text);

  std::span<const Extent> factors() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  Extent total() const noexcept { return total_; }
  /// 1-based axis.
  Extent factor(std::size_t axis) const;

  std::string to_string() const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<Extent> factors_;
  Extent total_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Shape& shape);

/// Digits (x_1, ..., x_n), each 1-based. Storage position 0 holds x_1.
class MultiIndex {
 public:
  using Storage = boost::container::small_vector<Extent, 8>;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<Extent> digits) : digits_(digits) {}
  explicit MultiIndex(std::span<const Extent> digits)
      : digits_(digits.begin(), digits.end()) {}
  explicit MultiIndex(Storage digits) : digits_(std::move(digits)) {}

  std::span<const Extent> digits() const noexcept {
    return {digits_.data(), digits_.size()};
  }
  std::size_t size() const noexcept { return digits_.size(); }
  Extent operator[](std::size_t pos) const noexcept { return digits_[pos]; }

  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.digits_ == b.digits_;
  }

 private:
  Storage digits_;
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& multi);

/// 1-based position y in [1, N].
struct FlatIndex {
  Extent value = 1;

  friend auto operator<=>(const FlatIndex&, const FlatIndex&) = default;
};

/// y = x_1 + sum_{k>=2} (x_k - 1) * X_1 * ... * X_{k-1}.
/// Throws invalid_index naming the first axis whose digit is out of range.
FlatIndex flatten(const Shape& shape, std::span<const Extent> digits);
FlatIndex flatten(const Shape& shape, const MultiIndex& multi);

/// Mixed-radix digit extraction on (y - 1), each residue shifted into
/// {1, ..., X_k}.
MultiIndex unflatten(const Shape& shape, FlatIndex flat);

/// Allocation-free variant; `out` must have room for shape.rank() digits.
void unflatten_into(const Shape& shape, FlatIndex flat, std::span<Extent> out);

/// unflatten(to, flatten(from, multi)). Throws shape_mismatch when the totals
/// differ.
MultiIndex rebase(const Shape& from, const Shape& to, const MultiIndex& multi);

/// Hyperplane (normal, r - r0) = 0 in the (x_1, ..., x_n, y) space.
struct PlaneSpec {
  std::vector<std::int64_t> normal;
  std::vector<std::int64_t> base_point;
};

/// normal = {1, X_1, X_1 X_2, ..., X_1...X_{n-1}, -1}, base point all ones.
PlaneSpec plane_spec(const Shape& shape);

using Vec3 = std::array<std::int64_t, 3>;

/// Direction of the line where two planes in 3-space meet: n1 x n2.
/// Throws degenerate_intersection for parallel normals.
Vec3 intersection_direction(const Vec3& n1, const Vec3& n2);

inline constexpr Extent kDefaultEnumerationCap = 1'000'000;

struct LatticeRow {
  MultiIndex digits;
  FlatIndex y;
};

/// One row per y in ascending order. Throws too_large above `cap`.
std::vector<LatticeRow> lattice_points(const Shape& shape,
                                       Extent cap = kDefaultEnumerationCap);

/// Header `x1,...,xn,y` followed by one line per row.
void write_lattice_csv(std::ostream& os, const Shape& shape,
                       std::span<const LatticeRow> rows);

/// Segment of the line {plane y = y'} projected onto the x_1-x_2 plane and
/// clipped to [1,X_1] x [1,X_2].
struct ProjectedSegment {
  FlatIndex y;
  std::array<double, 2> begin;
  std::array<double, 2> end;
};

/// One segment per y' in [1, N]; two-axis shapes only (invalid_shape
/// otherwise).
std::vector<ProjectedSegment> projected_intersections(
    const Shape& shape, Extent cap = kDefaultEnumerationCap);

/// Trivial shape (n) first, then every ordered tuple of factors >= 2 with
/// product n and at most `max_parts` entries. Tuples are grouped by length,
/// then by their sorted multiset, then listed as distinct permutations in
/// lexicographic order.
std::vector<Shape> factorizations(Extent n, std::size_t max_parts);

}  // namespace entropart
