#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "neighborly/point_cloud.hpp"

namespace neighborly {

/// Philox4x32-10 counter-based generator. The key is the 64-bit seed, the
/// upper half of the counter is the stream id and the lower half counts
/// blocks, so (seed, stream_id) names an independent reproducible sequence.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;

  Philox4x32(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_(stream_id) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (position_ == 4) {
      buffer_ = block(seed_, stream_, block_++);
      position_ = 0;
    }
    return buffer_[position_++];
  }

  /// One raw 128-bit output block for the given key/counter.
  static std::array<std::uint32_t, 4> block(std::uint64_t key, std::uint64_t stream, std::uint64_t counter);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned position_ = 4;
};

struct SeededStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  Philox4x32 engine() const { return {seed, stream_id}; }
};

enum class DistributionKind { gaussian, ball, mixture, cube };

struct DistributionSpec {
  DistributionKind kind = DistributionKind::gaussian;
  Index d = 1;
  /// Only meaningful for `ball`.
  double radius = 1.0;

  /// "gaussian", "ball:<r>", "mixture" or "cube". `d` is supplied separately.
  static DistributionSpec parse(std::string_view text, Index d);
  std::string name() const;
};

/// 1/sqrt(d); never cached.
double mixture_epsilon(Index d);

enum class MixtureBranch { none, gaussian_part, ball_part };

struct SampledPoint {
  Vector<double> x;
  MixtureBranch branch = MixtureBranch::none;
};

/// Draws from the engine's current position (used to build whole clouds).
SampledPoint sample_point(const DistributionSpec& spec, Philox4x32& engine);
/// First draw of a fresh stream.
SampledPoint sample_point(const DistributionSpec& spec, const SeededStream& stream);

/// n points drawn sequentially from one stream.
FloatCloud sample_cloud(const DistributionSpec& spec, Index n, Philox4x32& engine);

/// Phi(-r): standard normal mass beyond a hyperplane at distance r.
double gaussian_halfspace_mass(double r);

/// Tukey depth of p; analytic only for the standard Gaussian.
double depth_of_point(const DistributionSpec& spec, const Vector<double>& p);

}  // namespace neighborly
