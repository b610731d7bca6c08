#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neighborly/convex_oracle.hpp"
#include "neighborly/sampling.hpp"

namespace neighborly {

/// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

/// Redraws allowed per trial before giving up on a degenerate generator.
inline constexpr int kMaxRedraws = 1000;

enum class TargetKind { containment, face_density, neighborliness, nonface_count };

const char* to_string(TargetKind t);
TargetKind parse_target(std::string_view name);

struct ExperimentConfig {
  DistributionSpec spec;
  Index n = 0;
  Index d = 0;
  TargetKind target = TargetKind::containment;
  /// l for face_density, k for neighborliness and nonface_count.
  Index param = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  /// Containment only; the origin when absent.
  std::optional<Vector<double>> query_point;
  /// Face density only: test a uniformly random (l+1)-subset instead of the first l+1 points.
  bool random_subset = false;
  std::uint64_t subset_cap = kDefaultSubsetCap;

  /// Throws std::invalid_argument, or SubsetBudgetExceeded for neighborliness.
  void validate() const;
};

struct Estimate {
  double mean = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t discarded_degenerate = 0;
  std::uint64_t seed = 0;
  /// Set when discarded/trials >= 0.001.
  std::string warning;

  double half_width() const { return (ci_high - ci_low) / 2; }
};

/// Wilson score interval at quantile z.
Estimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ99);

/// `workers` threads split the trial range; results do not depend on it.
Estimate estimate_containment(const ExperimentConfig& config, unsigned workers = 1);
Estimate estimate_face_density(const ExperimentConfig& config, unsigned workers = 1);
Estimate estimate_neighborliness(const ExperimentConfig& config, unsigned workers = 1);

/// Expected number of non-face k-subsets, counted exhaustively per cloud.
/// Reported with a normal-approximation 99% interval; there is no pass/fail gate.
struct CountEstimate {
  double mean = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t trials = 0;
  std::uint64_t discarded_degenerate = 0;
  std::uint64_t seed = 0;
  std::uint64_t subsets_per_cloud = 0;
};

CountEstimate estimate_nonface_count(const ExperimentConfig& config, unsigned workers = 1);

/// Dispatch on config.target (nonface_count is reported through Estimate
/// fields without the [0,1] interpretation).
Estimate run_experiment(const ExperimentConfig& config, unsigned workers = 1);

inline constexpr const char* kSuiteHeader =
    "spec,d,n,target,param,trials,seed,mean,ci_low,ci_high,discarded,exact_bound,bound_kind,error";

/// One CSV row per config (after the header); a failing config fills the
/// error column and the suite continues. Returns the number of failed rows.
std::size_t run_experiment_suite(const std::vector<ExperimentConfig>& configs, unsigned workers, std::ostream& out);

/// Reads rows "spec,d,n,target,param,trials,seed" (header optional).
std::vector<ExperimentConfig> read_experiment_configs_csv(std::istream& in);

}  // namespace neighborly
