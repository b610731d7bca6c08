#include "neighborly/convex_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "neighborly/combinatorics.hpp"
#include "neighborly/lp.hpp"

namespace neighborly {
namespace {

constexpr double kPivotEps = 1e-11;

template <typename Scalar>
struct Geometry;

template <>
struct Geometry<Rational> {
  static Index rank_of(const RationalMatrix& m, double) { return m.size() == 0 ? 0 : rank(m); }

  // Columns span the orthogonal complement of the row space of `directions`.
  static RationalMatrix complement(const RationalMatrix& directions, Index dim, double, Index& row_rank) {
    if (directions.rows() == 0) {
      row_rank = 0;
      return RationalMatrix::Identity(dim, dim);
    }
    RationalMatrix basis = null_space_basis(directions);
    row_rank = dim - basis.cols();
    return basis;
  }
};

template <>
struct Geometry<double> {
  static Index rank_of(const Matrix<double>& m, double tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix<double>> svd(m);
    const auto& s = svd.singularValues();
    const double cutoff = tol * std::max(1.0, s(0));
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i) r += s(i) > cutoff ? 1 : 0;
    return r;
  }

  static Matrix<double> complement(const Matrix<double>& directions, Index dim, double tol, Index& row_rank) {
    if (directions.rows() == 0) {
      row_rank = 0;
      return Matrix<double>::Identity(dim, dim);
    }
    Eigen::JacobiSVD<Matrix<double>> svd(directions, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cutoff = tol * std::max(1.0, s(0));
    row_rank = 0;
    for (Index i = 0; i < s.size(); ++i) row_rank += s(i) > cutoff ? 1 : 0;
    return svd.matrixV().rightCols(dim - row_rank);
  }

  static double distance_to_affine_hull(const Matrix<double>& pts, const Vector<double>& q, double tol) {
    const Vector<double> base = pts.row(0).transpose();
    const Vector<double> offset = q - base;
    if (pts.rows() == 1) return offset.norm();
    const Matrix<double> dirs = pts.bottomRows(pts.rows() - 1).rowwise() - pts.row(0);
    Eigen::JacobiSVD<Matrix<double>> svd(dirs, Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double cutoff = tol * std::max(1.0, s(0));
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i) r += s(i) > cutoff ? 1 : 0;
    const Matrix<double> span = svd.matrixV().leftCols(r);
    return (offset - span * (span.transpose() * offset)).norm();
  }
};

double coordinate_scale(const Matrix<double>& pts, const Vector<double>& q) {
  double scale = 1.0;
  if (pts.size() > 0) scale = std::max(scale, pts.cwiseAbs().maxCoeff());
  if (q.size() > 0) scale = std::max(scale, q.cwiseAbs().maxCoeff());
  return scale;
}

std::vector<Index> normalized_subset(std::span<const Index> subset, Index n) {
  if (subset.empty()) throw std::invalid_argument("face query: subset must be nonempty");
  std::vector<Index> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("face query: subset has repeated indices");
  }
  if (sorted.front() < 0 || sorted.back() >= n) throw std::invalid_argument("face query: index out of range");
  return sorted;
}

template <typename Scalar>
Matrix<Scalar> select_rows(const Matrix<Scalar>& m, const std::vector<Index>& rows) {
  Matrix<Scalar> out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

FaceWitness<Rational> build_witness(const ExactCloud& cloud, std::vector<Index> subset, std::vector<Index> rest,
                                    RationalVector convex_weights) {
  FaceWitness<Rational> w;
  const Index d = cloud.dimension();
  w.point = RationalVector::Zero(d);
  for (std::size_t i = 0; i < rest.size(); ++i) {
    w.point += convex_weights(static_cast<Index>(i)) * cloud.points.row(rest[i]).transpose();
  }
  RationalMatrix system(d + 1, static_cast<Index>(subset.size()));
  for (std::size_t j = 0; j < subset.size(); ++j) {
    system.col(static_cast<Index>(j)).head(d) = cloud.points.row(subset[j]).transpose();
    system(d, static_cast<Index>(j)) = 1;
  }
  RationalVector rhs(d + 1);
  rhs << w.point, Rational(1);
  if (!solve(system, rhs, w.affine_weights)) {
    throw std::logic_error("face witness: common point is not in the affine hull of the subset");
  }
  w.subset = std::move(subset);
  w.complement = std::move(rest);
  w.convex_weights = std::move(convex_weights);
  return w;
}

}  // namespace

const char* to_string(Containment c) {
  switch (c) {
    case Containment::inside: return "inside";
    case Containment::outside: return "outside";
    case Containment::boundary_or_degenerate: return "boundary_or_degenerate";
  }
  return "?";
}

template <typename Scalar>
Containment contains_point(const PointCloud<Scalar>& cloud, const Vector<Scalar>& p, double tol) {
  const Index d = cloud.dimension();
  if (p.size() != d) throw std::invalid_argument("contains_point: point dimension does not match cloud");
  if (cloud.size() < 1) throw std::invalid_argument("contains_point: empty cloud");
  const Matrix<Scalar> dirs = cloud.points.rowwise() - cloud.points.row(0);
  const Index spanned = Geometry<Scalar>::rank_of(dirs, tol);

  if constexpr (PointCloud<Scalar>::exact) {
    const auto res = barycentric_margin<Rational>(cloud.points, p);
    if (!res.in_affine_hull) return Containment::outside;
    if (spanned < d) return Containment::boundary_or_degenerate;
    const int s = res.margin.sign();
    return s > 0 ? Containment::inside : (s == 0 ? Containment::boundary_or_degenerate : Containment::outside);
  } else {
    const double scale = coordinate_scale(cloud.points, p);
    if (spanned < d) {
      return Geometry<double>::distance_to_affine_hull(cloud.points, p, tol) > tol * scale
                 ? Containment::outside
                 : Containment::boundary_or_degenerate;
    }
    const auto res = barycentric_margin<double>(cloud.points, p, kPivotEps);
    if (!res.in_affine_hull) return Containment::boundary_or_degenerate;
    const double normalized = static_cast<double>(cloud.size()) * res.margin;
    if (normalized > tol) return Containment::inside;
    if (normalized < -tol) return Containment::outside;
    return Containment::boundary_or_degenerate;
  }
}

template <typename Scalar>
FaceQueryResult<Scalar> is_face(const PointCloud<Scalar>& cloud, std::span<const Index> subset_in, double tol) {
  const Index n = cloud.size();
  const Index d = cloud.dimension();
  std::vector<Index> subset = normalized_subset(subset_in, n);
  FaceQueryResult<Scalar> result;
  if (static_cast<Index>(subset.size()) == n) {
    result.is_face = true;
    return result;
  }
  std::vector<Index> rest = complement_of(subset, n);

  // Project along aff(K): aff(K) meets conv(rest) iff the image of K's base
  // point lies in the convex hull of the projected rest.
  const Matrix<Scalar> k_points = select_rows(cloud.points, subset);
  const Matrix<Scalar> directions = k_points.bottomRows(k_points.rows() - 1).rowwise() - k_points.row(0);
  Index k_rank = 0;
  const Matrix<Scalar> proj = Geometry<Scalar>::complement(directions, d, tol, k_rank);

  if constexpr (!PointCloud<Scalar>::exact) {
    if (k_rank < directions.rows()) {
      result.degenerate = true;
      return result;
    }
  }

  const Index m = proj.cols();
  const Matrix<Scalar> r_points = select_rows(cloud.points, rest);

  if (m == 0) {
    // aff(K) is all of R^d.
    result.is_face = false;
    if constexpr (PointCloud<Scalar>::exact) {
      RationalVector weights = RationalVector::Zero(static_cast<Index>(rest.size()));
      weights(0) = 1;
      result.witness = build_witness(cloud, subset, rest, std::move(weights));
    }
    return result;
  }

  const Matrix<Scalar> projected = r_points * proj;
  const Vector<Scalar> target = (k_points.row(0) * proj).transpose();

  if constexpr (PointCloud<Scalar>::exact) {
    const auto res = barycentric_margin<Rational>(projected, target);
    if (!res.in_affine_hull || res.margin.sign() < 0) {
      result.is_face = true;
      return result;
    }
    result.is_face = false;
    result.witness = build_witness(cloud, subset, rest, res.weights);
    return result;
  } else {
    const double scale = coordinate_scale(projected, target);
    const Matrix<double> pdirs = projected.rowwise() - projected.row(0);
    if (Geometry<double>::rank_of(pdirs, tol) < m) {
      if (Geometry<double>::distance_to_affine_hull(projected, target, tol) > tol * scale) {
        result.is_face = true;
      } else {
        result.degenerate = true;
      }
      return result;
    }
    const auto res = barycentric_margin<double>(projected, target, kPivotEps);
    if (!res.in_affine_hull) {
      result.degenerate = true;
      return result;
    }
    const double normalized = static_cast<double>(rest.size()) * res.margin;
    if (normalized > tol) {
      result.is_face = false;
    } else if (normalized < -tol) {
      result.is_face = true;
    } else {
      result.degenerate = true;
    }
    return result;
  }
}

bool verify_witness(const ExactCloud& cloud, const FaceWitness<Rational>& w) {
  const Index d = cloud.dimension();
  if (w.affine_weights.size() != static_cast<Index>(w.subset.size())) return false;
  if (w.convex_weights.size() != static_cast<Index>(w.complement.size())) return false;
  if (w.affine_weights.sum() != 1 || w.convex_weights.sum() != 1) return false;
  RationalVector lhs = RationalVector::Zero(d);
  RationalVector rhs = RationalVector::Zero(d);
  for (std::size_t i = 0; i < w.subset.size(); ++i) {
    lhs += w.affine_weights(static_cast<Index>(i)) * cloud.points.row(w.subset[i]).transpose();
  }
  for (std::size_t i = 0; i < w.complement.size(); ++i) {
    if (w.convex_weights(static_cast<Index>(i)) < 0) return false;
    rhs += w.convex_weights(static_cast<Index>(i)) * cloud.points.row(w.complement[i]).transpose();
  }
  return lhs == rhs && lhs == w.point;
}

std::vector<std::vector<Index>> facets_bruteforce(const ExactCloud& cloud) {
  const Index n = cloud.size();
  const Index d = cloud.dimension();
  if (d < 1) throw std::invalid_argument("facets_bruteforce: dimension must be >= 1");
  if (n < d + 1) throw std::invalid_argument("facets_bruteforce: need at least d+1 points");

  std::vector<std::vector<Index>> facets;
  for_each_combination(n, d, [&](const std::vector<Index>& face) {
    RationalMatrix lifted(d, d + 1);
    for (Index i = 0; i < d; ++i) {
      lifted.row(i).head(d) = cloud.points.row(face[static_cast<std::size_t>(i)]);
      lifted(i, d) = 1;
    }
    const std::vector<Index> others = complement_of(face, n);
    auto violation = [&](Index other) {
      std::vector<Index> bad = face;
      bad.push_back(other);
      std::sort(bad.begin(), bad.end());
      std::string msg = "general position violated: points {";
      for (std::size_t i = 0; i < bad.size(); ++i) msg += (i ? "," : "") + std::to_string(bad[i]);
      msg += "} lie on a common hyperplane";
      return GeneralPositionError(bad, msg);
    };
    const RationalMatrix normal = null_space_basis(lifted);
    if (normal.cols() != 1) throw violation(others.front());
    int side = 0;
    bool is_facet = true;
    for (Index other : others) {
      Rational s = normal(d, 0);
      for (Index j = 0; j < d; ++j) s += normal(j, 0) * cloud.points(other, j);
      const int sign = s.sign();
      if (sign == 0) throw violation(other);
      if (side == 0) {
        side = sign;
      } else if (sign != side) {
        is_facet = false;
      }
    }
    if (is_facet) facets.push_back(face);
    return true;
  });
  return facets;
}

bool is_face_bruteforce(const std::vector<std::vector<Index>>& facets, Index n, std::span<const Index> subset_in) {
  const std::vector<Index> subset = normalized_subset(subset_in, n);
  if (static_cast<Index>(subset.size()) >= n) throw std::invalid_argument("is_face_bruteforce: subset must be proper");
  for (const auto& facet : facets) {
    if (std::includes(facet.begin(), facet.end(), subset.begin(), subset.end())) return true;
  }
  return false;
}

bool is_face_bruteforce(const ExactCloud& cloud, std::span<const Index> subset) {
  return is_face_bruteforce(facets_bruteforce(cloud), cloud.size(), subset);
}

std::uint64_t neighborliness_subset_count(Index n, Index k) {
  std::uint64_t total = 0;
  for (Index j = 1; j <= k; ++j) {
    const std::uint64_t c = binomial_u64(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(j));
    if (total > std::numeric_limits<std::uint64_t>::max() - c) return std::numeric_limits<std::uint64_t>::max();
    total += c;
  }
  return total;
}

template <typename Scalar>
NeighborlinessResult is_k_neighborly(const PointCloud<Scalar>& cloud, Index k, std::uint64_t subset_cap,
                                     NeighborlyStrategy strategy, double tol) {
  const Index n = cloud.size();
  if (k < 1 || k > n) throw std::invalid_argument("is_k_neighborly: need 1 <= k <= n");
  const std::uint64_t required = neighborliness_subset_count(n, k);
  if (required > subset_cap) throw SubsetBudgetExceeded(required, subset_cap);

  NeighborlinessResult result;
  result.neighborly = true;
  auto test = [&](const std::vector<Index>& subset) {
    ++result.subsets_tested;
    const auto face = is_face(cloud, std::span<const Index>(subset), tol);
    if (face.degenerate) {
      result.degenerate = true;
      result.neighborly = false;
      result.failing_subset = subset;
      return false;
    }
    if (!face.is_face) {
      result.neighborly = false;
      result.failing_subset = subset;
      return false;
    }
    return true;
  };

  if (strategy == NeighborlyStrategy::all_sizes) {
    for (Index size = 1; size <= k; ++size) {
      if (!for_each_combination(n, size, test)) return result;
    }
    return result;
  }
  if (!for_each_combination(n, 1, test)) return result;
  if (k > 1) for_each_combination(n, k, test);
  return result;
}

ExactCloud gale_transform(const ExactCloud& cloud) {
  const Index n = cloud.size();
  const Index d = cloud.dimension();
  RationalMatrix lifted(n, d + 1);
  lifted << cloud.points, RationalMatrix::Ones(n, 1);
  if (rank(lifted) != d + 1) {
    throw std::domain_error("gale_transform: points do not affinely span R^" + std::to_string(d));
  }
  RationalMatrix transposed = lifted.transpose();
  return ExactCloud(null_space_basis(transposed), cloud.label.empty() ? "gale" : cloud.label + " (gale)");
}

ExactCloud moment_curve_cloud(Index count, Index dim, std::span<const Rational> parameters) {
  if (count < 1 || dim < 1) throw std::invalid_argument("moment_curve_cloud: need count >= 1 and dim >= 1");
  if (static_cast<Index>(parameters.size()) != count) {
    throw std::invalid_argument("moment_curve_cloud: need exactly one parameter per point");
  }
  for (std::size_t i = 1; i < parameters.size(); ++i) {
    if (!(parameters[i - 1] < parameters[i])) {
      throw std::invalid_argument("moment_curve_cloud: parameters must be strictly increasing");
    }
  }
  RationalMatrix pts(count, dim);
  for (Index i = 0; i < count; ++i) {
    Rational power = 1;
    for (Index j = 0; j < dim; ++j) {
      power *= parameters[static_cast<std::size_t>(i)];
      pts(i, j) = power;
    }
  }
  return ExactCloud(std::move(pts), "moment curve");
}

ExactCloud centered(const ExactCloud& cloud) {
  RationalVector centroid = RationalVector::Zero(cloud.dimension());
  for (Index i = 0; i < cloud.size(); ++i) centroid += cloud.points.row(i).transpose();
  centroid /= Rational(cloud.size());
  ExactCloud out = cloud;
  out.points = cloud.points.rowwise() - centroid.transpose();
  return out;
}

template Containment contains_point<Rational>(const ExactCloud&, const RationalVector&, double);
template Containment contains_point<double>(const FloatCloud&, const Vector<double>&, double);
template FaceQueryResult<Rational> is_face<Rational>(const ExactCloud&, std::span<const Index>, double);
template FaceQueryResult<double> is_face<double>(const FloatCloud&, std::span<const Index>, double);
template NeighborlinessResult is_k_neighborly<Rational>(const ExactCloud&, Index, std::uint64_t, NeighborlyStrategy,
                                                        double);
template NeighborlinessResult is_k_neighborly<double>(const FloatCloud&, Index, std::uint64_t, NeighborlyStrategy,
                                                      double);

}  // namespace neighborly
