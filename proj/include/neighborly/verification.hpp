#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "neighborly/point_cloud.hpp"
#include "neighborly/sampling.hpp"

namespace neighborly {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Coordinates p/q with |p| <= 20 and q in 1..4, redrawn until every d+1
/// points are affinely independent.
ExactCloud random_rational_cloud(Philox4x32& engine, Index n, Index d);

/// Every (d+1)-subset affinely independent.
bool in_general_position(const ExactCloud& cloud);

/// Origin strictly inside conv(cloud), decided from the facet list and
/// hyperplane signs only (no LP). Requires general position.
bool origin_inside_bruteforce(const ExactCloud& cloud);

CheckResult check_linalg(std::size_t matrices, std::uint64_t seed);
/// Exact LP face test against the facet enumeration on every proper nonempty
/// subset; non-face witnesses are verified too.
CheckResult check_oracle_equivalence(std::size_t clouds, Index max_d, Index max_n, std::uint64_t seed);
/// Exact contains_point against the facet sign test on random query points.
CheckResult check_containment_bruteforce(std::size_t clouds, std::uint64_t seed);
/// Float verdicts agree with exact ones whenever the exact margin exceeds 10 tol.
CheckResult check_float_exact_agreement(std::size_t clouds, std::uint64_t seed);
/// Centred primal: subset contains the origin in its interior iff the complementary
/// Gale vectors form a face, both sides by facet enumeration.
CheckResult check_gale(std::size_t clouds, std::uint64_t seed);

CheckResult check_wendel_properties(long max_n);
CheckResult check_depth_half_identity(long max_n);
CheckResult check_depth_quadrature(long max_n);
/// (4, 1, 1/4) = 35/128 by exact integration, and the uncorrected sum gives 246/256.
CheckResult check_depth_reference_value();
CheckResult check_depth_below_wendel(long max_n);
CheckResult check_face_nonface_forms(long max_n);
/// Even N-d-1: formula against facet enumeration of moment-curve clouds.
/// Odd N-d-1 must come back flagged as unverified parity.
CheckResult check_cyclic_counts(long max_N);
CheckResult check_limit_ratio(long N);
CheckResult check_failure_bound_decreasing();

CheckResult check_threshold_curve(double alpha_min, double alpha_max, std::size_t steps);
CheckResult check_exponent_properties();

CheckResult check_sampling(std::uint64_t draws, std::uint64_t seed);

CheckResult check_containment_covers_wendel(std::uint64_t trials, std::uint64_t seed, unsigned workers);
CheckResult check_distribution_free(std::uint64_t trials, std::uint64_t seed, unsigned workers);
CheckResult check_depth_containment_mc(std::uint64_t trials, std::uint64_t seed, unsigned workers);
CheckResult check_worker_determinism(std::uint64_t trials, std::uint64_t seed);

struct VerifyOptions {
  bool quick = false;
  std::uint64_t seed = 20240601;
  unsigned workers = 1;
};

/// All groups; `on_result` (if set) is called as each finishes.
std::vector<CheckResult> run_verify(const VerifyOptions& options,
                                    const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace neighborly
