#pragma once

#include <iosfwd>
#include <string>
#include <type_traits>
#include <variant>

#include "neighborly/exact_linalg.hpp"

namespace neighborly {

/// An ordered set of n points in R^d, one point per row of `points`.
template <typename Scalar>
struct PointCloud {
  static constexpr bool exact = std::is_same_v<Scalar, Rational>;

  Matrix<Scalar> points;
  std::string label;

  PointCloud() = default;
  explicit PointCloud(Matrix<Scalar> pts, std::string name = {}) : points(std::move(pts)), label(std::move(name)) {}

  Index size() const { return points.rows(); }
  Index dimension() const { return points.cols(); }

  /// Duplicates are legal on the exact path but worth surfacing.
  bool has_duplicates() const {
    for (Index i = 0; i < size(); ++i) {
      for (Index j = i + 1; j < size(); ++j) {
        if (points.row(i) == points.row(j)) return true;
      }
    }
    return false;
  }
};

using ExactCloud = PointCloud<Rational>;
using FloatCloud = PointCloud<double>;
using AnyCloud = std::variant<ExactCloud, FloatCloud>;

/// CSV format: header "d=<dim>,n=<count>,exact=<0|1>", then one point per line.
/// Coordinates may be decimals or "p/q"; exact clouds keep them exactly.
AnyCloud read_cloud_csv(std::istream& in);
AnyCloud read_cloud_csv_file(const std::string& path);
void write_cloud_csv(std::ostream& out, const ExactCloud& cloud);
void write_cloud_csv(std::ostream& out, const FloatCloud& cloud);

FloatCloud to_float(const ExactCloud& cloud);

/// Every double is a dyadic rational, so this conversion is exact.
ExactCloud to_exact(const FloatCloud& cloud);

}  // namespace neighborly
