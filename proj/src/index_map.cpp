#include "entropart/index_map.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <ostream>
#include <sstream>

#include "entropart/error.hpp"

namespace entropart {

namespace {

bool mul_overflows(Extent a, Extent b, Extent& out) {
  return __builtin_mul_overflow(a, b, &out);
}

void check_rank(const Shape& shape, std::size_t got) {
  if (got != shape.rank()) {
    throw Error(ErrorKind::invalid_index,
                "multi-index has " + std::to_string(got) + " digits, shape " +
                    shape.to_string() + " has " +
                    std::to_string(shape.rank()) + " axes");
  }
}

// Non-decreasing tuples of factors >= min_factor with the given length and
// product, in lexicographic order.
void sorted_factor_tuples(Extent remaining, Extent min_factor,
                          std::size_t parts_left, std::vector<Extent>& prefix,
                          std::vector<std::vector<Extent>>& out) {
  if (parts_left == 1) {
    if (remaining >= min_factor) {
      prefix.push_back(remaining);
      out.push_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  for (Extent f = min_factor; f <= remaining / f; ++f) {
    if (remaining % f != 0) continue;
    prefix.push_back(f);
    sorted_factor_tuples(remaining / f, f, parts_left - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Shape::Shape(std::vector<Extent> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) {
    throw Error(ErrorKind::invalid_shape, "shape needs at least one factor");
  }
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (factors_[k] == 0) {
      throw Error(ErrorKind::invalid_shape,
                  "factor on axis " + std::to_string(k + 1) + " is zero");
    }
    if (mul_overflows(total_, factors_[k], total_)) {
      throw Error(ErrorKind::invalid_shape, "shape total overflows 64 bits");
    }
  }
}

Shape Shape::parse(std::string_view text) {
  std::vector<Extent> factors;
  std::size_t pos = 0;
  while (true) {
    const std::size_t sep = text.find_first_of("xX,", pos);
    const std::string_view token = text.substr(pos, sep - pos);
    Extent value = 0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last) {
      throw Error(ErrorKind::parse,
                  "cannot parse shape '" + std::string(text) + "'");
    }
    factors.push_back(value);
    if (sep == std::string_view::npos) break;
    pos = sep + 1;
  }
  return Shape(std::move(factors));
}

Extent Shape::factor(std::size_t axis) const {
  if (axis == 0 || axis > factors_.size()) {
    throw Error(ErrorKind::invalid_axes,
                "axis " + std::to_string(axis) + " outside 1.." +
                    std::to_string(factors_.size()));
  }
  return factors_[axis - 1];
}

std::string Shape::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) s += 'x';
    s += std::to_string(factors_[k]);
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const Shape& shape) {
  return os << shape.to_string();
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < digits_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(digits_[k]);
  }
  return s + ")";
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& multi) {
  return os << multi.to_string();
}

FlatIndex flatten(const Shape& shape, std::span<const Extent> digits) {
  check_rank(shape, digits.size());
  const auto factors = shape.factors();
  Extent offset = 0;
  Extent stride = 1;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (digits[k] < 1 || digits[k] > factors[k]) {
      throw Error(ErrorKind::invalid_index,
                  "digit " + std::to_string(digits[k]) + " on axis " +
                      std::to_string(k + 1) + " outside 1.." +
                      std::to_string(factors[k]));
    }
    offset += (digits[k] - 1) * stride;
    stride *= factors[k];
  }
  return FlatIndex{offset + 1};
}

FlatIndex flatten(const Shape& shape, const MultiIndex& multi) {
  return flatten(shape, multi.digits());
}

void unflatten_into(const Shape& shape, FlatIndex flat,
                    std::span<Extent> out) {
  if (flat.value < 1 || flat.value > shape.total()) {
    throw Error(ErrorKind::invalid_index,
                "flat index " + std::to_string(flat.value) + " outside 1.." +
                    std::to_string(shape.total()));
  }
  const auto factors = shape.factors();
  Extent rest = flat.value - 1;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    out[k] = rest % factors[k] + 1;
    rest /= factors[k];
  }
}

MultiIndex unflatten(const Shape& shape, FlatIndex flat) {
  MultiIndex::Storage digits(shape.rank());
  unflatten_into(shape, flat, {digits.data(), digits.size()});
  return MultiIndex(std::move(digits));
}

MultiIndex rebase(const Shape& from, const Shape& to, const MultiIndex& multi) {
  if (from.total() != to.total()) {
    throw Error(ErrorKind::shape_mismatch,
                "cannot rebase " + from.to_string() + " (N=" +
                    std::to_string(from.total()) + ") onto " + to.to_string() +
                    " (N=" + std::to_string(to.total()) + ")");
  }
  return unflatten(to, flatten(from, multi));
}

PlaneSpec plane_spec(const Shape& shape) {
  if (shape.total() >
      static_cast<Extent>(std::numeric_limits<std::int64_t>::max())) {
    throw Error(ErrorKind::too_large, "shape total exceeds signed 64 bits");
  }
  PlaneSpec plane;
  plane.normal.reserve(shape.rank() + 1);
  std::int64_t stride = 1;
  for (const Extent factor : shape.factors()) {
    plane.normal.push_back(stride);
    stride *= static_cast<std::int64_t>(factor);
  }
  plane.normal.push_back(-1);
  plane.base_point.assign(shape.rank() + 1, 1);
  return plane;
}

Vec3 intersection_direction(const Vec3& n1, const Vec3& n2) {
  const Vec3 a{n1[1] * n2[2] - n1[2] * n2[1], n1[2] * n2[0] - n1[0] * n2[2],
               n1[0] * n2[1] - n1[1] * n2[0]};
  if (a == Vec3{0, 0, 0}) {
    throw Error(ErrorKind::degenerate_intersection,
                "normals are parallel; the planes do not meet in a line");
  }
  return a;
}

std::vector<LatticeRow> lattice_points(const Shape& shape, Extent cap) {
  if (shape.total() > cap) {
    throw Error(ErrorKind::too_large,
                "shape " + shape.to_string() + " has " +
                    std::to_string(shape.total()) + " points, cap is " +
                    std::to_string(cap));
  }
  std::vector<LatticeRow> rows;
  rows.reserve(shape.total());
  for (Extent y = 1; y <= shape.total(); ++y) {
    rows.push_back({unflatten(shape, FlatIndex{y}), FlatIndex{y}});
  }
  return rows;
}

void write_lattice_csv(std::ostream& os, const Shape& shape,
                       std::span<const LatticeRow> rows) {
  for (std::size_t k = 1; k <= shape.rank(); ++k) os << 'x' << k << ',';
  os << "y\n";
  for (const auto& row : rows) {
    for (const Extent d : row.digits.digits()) os << d << ',';
    os << row.y.value << '\n';
  }
}

std::vector<ProjectedSegment> projected_intersections(const Shape& shape,
                                                      Extent cap) {
  if (shape.rank() != 2) {
    throw Error(ErrorKind::invalid_shape,
                "projections need a two-axis shape, got " + shape.to_string());
  }
  if (shape.total() > cap) {
    throw Error(ErrorKind::too_large,
                "shape " + shape.to_string() + " exceeds the cap of " +
                    std::to_string(cap));
  }
  // Along x_1 + X_1 (x_2 - 1) = y', parametrized by t = x_2 - 1.
  const double width = static_cast<double>(shape.factor(1));
  const double height = static_cast<double>(shape.factor(2));
  std::vector<ProjectedSegment> segments;
  segments.reserve(shape.total());
  for (Extent y = 1; y <= shape.total(); ++y) {
    const double target = static_cast<double>(y);
    const double t_lo = std::max((target - width) / width, 0.0);
    const double t_hi = std::min((target - 1.0) / width, height - 1.0);
    segments.push_back({FlatIndex{y},
                        {target - width * t_lo, 1.0 + t_lo},
                        {target - width * t_hi, 1.0 + t_hi}});
  }
  return segments;
}

std::vector<Shape> factorizations(Extent n, std::size_t max_parts) {
  if (n == 0) {
    throw Error(ErrorKind::invalid_argument, "cannot factor zero");
  }
  if (max_parts == 0) {
    throw Error(ErrorKind::invalid_argument, "max_parts must be at least 1");
  }
  std::vector<Shape> shapes{Shape{n}};
  std::vector<Extent> prefix;
  for (std::size_t parts = 2; parts <= max_parts; ++parts) {
    std::vector<std::vector<Extent>> sorted;
    sorted_factor_tuples(n, 2, parts, prefix, sorted);
    if (sorted.empty()) break;
    for (auto& tuple : sorted) {
      do {
        shapes.emplace_back(tuple);
      } while (std::next_permutation(tuple.begin(), tuple.end()));
    }
  }
  return shapes;
}

}  // namespace entropart
