#pragma once

// Convex-position oracles. Every query is templated on the scalar type:
//   Rational -> exact decision by rational linear feasibility,
//   double   -> same procedure with a tolerance `tol` on normalized margins.
// On the floating path, near-degenerate configurations are reported, never
// silently classified.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "neighborly/errors.hpp"
#include "neighborly/point_cloud.hpp"

namespace neighborly {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::uint64_t kDefaultSubsetCap = 200000;

enum class Containment { inside, outside, boundary_or_degenerate };

const char* to_string(Containment c);

/// "inside" means interior relative to R^d, which needs n >= d+1 affinely
/// spanning points. Boundary points and lower-dimensional hulls that contain
/// p are reported as boundary_or_degenerate; p off the affine hull is outside.
template <typename Scalar>
Containment contains_point(const PointCloud<Scalar>& cloud, const Vector<Scalar>& p,
                           double tol = kDefaultTolerance);

/// Certificate that aff(K) meets conv(S \ K).
template <typename Scalar>
struct FaceWitness {
  std::vector<Index> subset;
  std::vector<Index> complement;
  Vector<Scalar> affine_weights;  // over subset, sum to 1
  Vector<Scalar> convex_weights;  // over complement, >= 0, sum to 1
  Vector<Scalar> point;           // the common point
};

template <typename Scalar>
struct FaceQueryResult {
  bool is_face = false;
  /// Floating path only: margin fell inside the tolerance band.
  bool degenerate = false;
  std::optional<FaceWitness<Scalar>> witness;
};

/// conv(K) is a face iff aff(K) does not meet conv(S \ K). The full index set
/// is a face by convention. Throws std::invalid_argument on an empty or
/// out-of-range subset.
template <typename Scalar>
FaceQueryResult<Scalar> is_face(const PointCloud<Scalar>& cloud, std::span<const Index> subset,
                                double tol = kDefaultTolerance);

/// Exact check of a non-face certificate against the cloud.
bool verify_witness(const ExactCloud& cloud, const FaceWitness<Rational>& witness);

/// d-subsets whose affine hull has every other point strictly on one side.
/// Requires general position and n >= d+1; throws GeneralPositionError with
/// the offending (d+1)-subset otherwise.
std::vector<std::vector<Index>> facets_bruteforce(const ExactCloud& cloud);

/// Simplicial rule: a proper subset is a face iff some facet contains it.
bool is_face_bruteforce(const ExactCloud& cloud, std::span<const Index> subset);
bool is_face_bruteforce(const std::vector<std::vector<Index>>& facets, Index n, std::span<const Index> subset);

enum class NeighborlyStrategy {
  /// Check every point is a vertex, then only the size-k subsets.
  vertices_then_k,
  /// Check every subset of size 1..k.
  all_sizes,
};

struct NeighborlinessResult {
  bool neighborly = false;
  bool degenerate = false;
  /// First subset that failed (empty when neighborly).
  std::vector<Index> failing_subset;
  std::uint64_t subsets_tested = 0;
};

/// Number of subsets of size 1..k that the budget is checked against.
std::uint64_t neighborliness_subset_count(Index n, Index k);

/// Throws SubsetBudgetExceeded when the count of subsets of size <= k
/// exceeds `subset_cap`.
template <typename Scalar>
NeighborlinessResult is_k_neighborly(const PointCloud<Scalar>& cloud, Index k,
                                     std::uint64_t subset_cap = kDefaultSubsetCap,
                                     NeighborlyStrategy strategy = NeighborlyStrategy::vertices_then_k,
                                     double tol = kDefaultTolerance);

/// Gale dual: rows of a null-space basis of [points | 1]^T. Output has the
/// same number of points in dimension N-d-1 and sums exactly to the origin.
/// The dual depends only on the affine structure, so its correspondence
/// "I contains c in its interior <=> the complement is a dual face" is about
/// the centroid c of the primal cloud. Throws std::domain_error when the
/// points do not affinely span R^d.
ExactCloud gale_transform(const ExactCloud& cloud);

/// Points (t, t^2, ..., t^dim). Parameters must be strictly increasing.
ExactCloud moment_curve_cloud(Index count, Index dim, std::span<const Rational> parameters);

/// Translate so the centroid sits exactly at the origin.
ExactCloud centered(const ExactCloud& cloud);

}  // namespace neighborly
