#include "neighborly/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace neighborly {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

Vector<double> gaussian_vector(Index d, Philox4x32& engine) {
  std::normal_distribution<double> normal;
  Vector<double> x(d);
  for (Index i = 0; i < d; ++i) x(i) = normal(engine);
  return x;
}

Vector<double> ball_vector(Index d, double radius, Philox4x32& engine) {
  Vector<double> x;
  double norm = 0;
  do {
    x = gaussian_vector(d, engine);
    norm = x.norm();
  } while (norm == 0.0);
  std::uniform_real_distribution<double> uniform;
  const double u = uniform(engine);
  return x * (radius * std::pow(u, 1.0 / static_cast<double>(d)) / norm);
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::uint64_t key, std::uint64_t stream, std::uint64_t counter) {
  std::array<std::uint32_t, 4> c{static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32),
                                 static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t k0 = static_cast<std::uint32_t>(key), k1 = static_cast<std::uint32_t>(key >> 32);
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return c;
}

DistributionSpec DistributionSpec::parse(std::string_view text, Index d) {
  if (d < 1) throw std::invalid_argument("distribution: dimension must be >= 1");
  DistributionSpec spec;
  spec.d = d;
  if (text == "gaussian") {
    spec.kind = DistributionKind::gaussian;
  } else if (text == "mixture") {
    spec.kind = DistributionKind::mixture;
  } else if (text == "cube") {
    spec.kind = DistributionKind::cube;
  } else if (text.starts_with("ball:")) {
    spec.kind = DistributionKind::ball;
    const std::string r(text.substr(5));
    std::size_t used = 0;
    try {
      spec.radius = std::stod(r, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != r.size() || r.empty() || !(spec.radius > 0) || !std::isfinite(spec.radius)) {
      throw std::invalid_argument("distribution: bad ball radius '" + r + "'");
    }
  } else {
    throw std::invalid_argument("distribution: unknown spec '" + std::string(text) +
                                "' (expected gaussian, ball:<r>, mixture or cube)");
  }
  return spec;
}

std::string DistributionSpec::name() const {
  switch (kind) {
    case DistributionKind::gaussian:
      return "gaussian";
    case DistributionKind::mixture:
      return "mixture";
    case DistributionKind::cube:
      return "cube";
    case DistributionKind::ball: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "ball:%g", radius);
      return buf;
    }
  }
  return "?";
}

double mixture_epsilon(Index d) {
  if (d < 1) throw std::invalid_argument("mixture_epsilon: d must be >= 1");
  return 1.0 / std::sqrt(static_cast<double>(d));
}

SampledPoint sample_point(const DistributionSpec& spec, Philox4x32& engine) {
  SampledPoint out;
  switch (spec.kind) {
    case DistributionKind::gaussian:
      out.x = gaussian_vector(spec.d, engine);
      break;
    case DistributionKind::ball:
      out.x = ball_vector(spec.d, spec.radius, engine);
      break;
    case DistributionKind::cube: {
      std::uniform_real_distribution<double> uniform(-1.0, 1.0);
      out.x.resize(spec.d);
      for (Index i = 0; i < spec.d; ++i) out.x(i) = uniform(engine);
      break;
    }
    case DistributionKind::mixture: {
      const double eps = mixture_epsilon(spec.d);
      std::bernoulli_distribution ball_part(eps);
      if (ball_part(engine)) {
        out.x = ball_vector(spec.d, eps, engine);
        out.branch = MixtureBranch::ball_part;
      } else {
        out.x = gaussian_vector(spec.d, engine);
        out.branch = MixtureBranch::gaussian_part;
      }
      break;
    }
  }
  return out;
}

SampledPoint sample_point(const DistributionSpec& spec, const SeededStream& stream) {
  auto engine = stream.engine();
  return sample_point(spec, engine);
}

FloatCloud sample_cloud(const DistributionSpec& spec, Index n, Philox4x32& engine) {
  FloatCloud cloud;
  cloud.points.resize(n, spec.d);
  for (Index i = 0; i < n; ++i) cloud.points.row(i) = sample_point(spec, engine).x.transpose();
  cloud.label = spec.name();
  return cloud;
}

double gaussian_halfspace_mass(double r) {
  if (!(r >= 0)) throw std::domain_error("gaussian_halfspace_mass: r must be >= 0");
  return 0.5 * std::erfc(r / std::sqrt(2.0));
}

double depth_of_point(const DistributionSpec& spec, const Vector<double>& p) {
  if (spec.kind != DistributionKind::gaussian) {
    throw std::invalid_argument("depth_of_point: analytic depth is only available for the gaussian spec");
  }
  if (p.size() != spec.d) throw std::invalid_argument("depth_of_point: dimension mismatch");
  return gaussian_halfspace_mass(p.norm());
}

}  // namespace neighborly
