#include "neighborly/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "neighborly/bounds.hpp"
#include "neighborly/combinatorics.hpp"
#include "neighborly/convex_oracle.hpp"
#include "neighborly/errors.hpp"
#include "neighborly/experiments.hpp"
#include "neighborly/lp.hpp"
#include "neighborly/thresholds.hpp"

namespace neighborly {
namespace {

constexpr int kMaxCloudRedraws = 10000;

Rational random_rational(Philox4x32& engine) {
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 4);
  return Rational(num(engine), den(engine));
}

RationalMatrix random_rational_matrix(Philox4x32& engine, Index rows, Index cols) {
  RationalMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = random_rational(engine);
  }
  return m;
}

ExactCloud rows_of(const ExactCloud& cloud, const std::vector<Index>& rows) {
  ExactCloud out;
  out.points.resize(static_cast<Index>(rows.size()), cloud.dimension());
  for (std::size_t i = 0; i < rows.size(); ++i) out.points.row(static_cast<Index>(i)) = cloud.points.row(rows[i]);
  return out;
}

/// (normal, offset) with normal.x + offset = 0 on the d given points.
std::pair<RationalVector, Rational> hyperplane_through(const ExactCloud& cloud, const std::vector<Index>& rows) {
  const Index d = cloud.dimension();
  RationalMatrix lifted(static_cast<Index>(rows.size()), d + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    lifted.row(static_cast<Index>(i)).head(d) = cloud.points.row(rows[i]);
    lifted(static_cast<Index>(i), d) = 1;
  }
  const RationalMatrix ns = null_space_basis(lifted);
  if (ns.cols() != 1) throw GeneralPositionError(rows, "hyperplane_through: points are not affinely independent");
  return {ns.col(0).head(d), ns(d, 0)};
}

int sign_of(const Rational& q) { return q.sign(); }

/// Moves the origin condition of the Gale check into the cloud: every d
/// points must be linearly independent so no facet hyperplane of any subset
/// passes through the origin.
bool origin_off_all_hyperplanes(const ExactCloud& cloud) {
  const Index d = cloud.dimension();
  return for_each_combination(cloud.size(), d, [&](const std::vector<Index>& rows) {
    return determinant(rows_of(cloud, rows).points) != 0;
  });
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

CheckResult make(std::string name, bool passed, std::string detail) {
  return CheckResult{std::move(name), passed, std::move(detail)};
}

}  // namespace

ExactCloud random_rational_cloud(Philox4x32& engine, Index n, Index d) {
  for (int attempt = 0; attempt < kMaxCloudRedraws; ++attempt) {
    ExactCloud cloud(random_rational_matrix(engine, n, d), "random");
    if (in_general_position(cloud)) return cloud;
  }
  throw std::runtime_error("random_rational_cloud: could not draw a cloud in general position");
}

bool in_general_position(const ExactCloud& cloud) {
  const Index d = cloud.dimension();
  const Index take = std::min<Index>(d + 1, cloud.size());
  return for_each_combination(cloud.size(), take, [&](const std::vector<Index>& rows) {
    RationalMatrix lifted(take, d + 1);
    for (Index i = 0; i < take; ++i) {
      lifted.row(i).head(d) = cloud.points.row(rows[static_cast<std::size_t>(i)]);
      lifted(i, d) = 1;
    }
    return rank(lifted) == take;
  });
}

bool origin_inside_bruteforce(const ExactCloud& cloud) {
  const Index d = cloud.dimension();
  if (cloud.size() < d + 1) return false;
  const auto facets = facets_bruteforce(cloud);
  if (facets.empty()) return false;
  for (const auto& facet : facets) {
    const auto [normal, offset] = hyperplane_through(cloud, facet);
    const auto others = complement_of(facet, cloud.size());
    const int inner = sign_of(Rational(cloud.points.row(others.front()).dot(normal) + offset));
    const int origin = sign_of(offset);
    if (origin == 0 || origin != inner) return false;
  }
  return true;
}

CheckResult check_linalg(std::size_t matrices, std::uint64_t seed) {
  Philox4x32 engine(seed, 0x11);
  std::uniform_int_distribution<int> dim(1, 6);
  std::size_t failures = 0;
  for (std::size_t t = 0; t < matrices; ++t) {
    const Index rows = dim(engine), cols = dim(engine);
    RationalMatrix m = random_rational_matrix(engine, rows, cols);
    // Plant dependent rows now and then so the null space is not always trivial.
    if (rows > 1 && t % 3 == 0) m.row(rows - 1) = m.row(0) * Rational(3, 2) - m.row(rows - 2);
    const auto once = row_reduce(m);
    const auto twice = row_reduce(once.reduced);
    const RationalMatrix ns = null_space_basis(m);
    const RationalMatrix product = m * ns;
    const bool null_ok = std::all_of(product.data(), product.data() + product.size(),
                                     [](const Rational& v) { return v == 0; });
    if (!(twice.reduced == once.reduced) || !null_ok || once.rank + ns.cols() != cols) ++failures;
  }
  return make("linalg.reduction_and_null_space", failures == 0,
              std::to_string(matrices) + " matrices, " + std::to_string(failures) + " failures");
}

CheckResult check_oracle_equivalence(std::size_t clouds, Index max_d, Index max_n, std::uint64_t seed) {
  std::size_t subsets = 0, disagreements = 0, bad_witnesses = 0;
  std::string first;
  for (std::size_t c = 0; c < clouds; ++c) {
    Philox4x32 engine(seed, c);
    std::uniform_int_distribution<Index> pick_d(1, max_d);
    const Index d = pick_d(engine);
    std::uniform_int_distribution<Index> pick_n(d + 1, std::max(d + 1, max_n));
    const Index n = pick_n(engine);
    const ExactCloud cloud = random_rational_cloud(engine, n, d);
    const auto facets = facets_bruteforce(cloud);
    for (Index size = 1; size < n; ++size) {
      for_each_combination(n, size, [&](const std::vector<Index>& subset) {
        ++subsets;
        const auto lp = is_face(cloud, std::span<const Index>(subset));
        const bool brute = is_face_bruteforce(facets, n, std::span<const Index>(subset));
        if (lp.is_face != brute) {
          ++disagreements;
          if (first.empty()) first = "cloud " + std::to_string(c) + " (d=" + std::to_string(d) + ")";
        }
        if (!lp.is_face && (!lp.witness || !verify_witness(cloud, *lp.witness))) ++bad_witnesses;
        return true;
      });
    }
  }
  std::string detail = std::to_string(clouds) + " clouds, " + std::to_string(subsets) + " subsets, " +
                       std::to_string(disagreements) + " disagreements, " + std::to_string(bad_witnesses) +
                       " bad witnesses";
  if (!first.empty()) detail += "; first at " + first;
  return make("convex_oracle.exact_vs_bruteforce", disagreements == 0 && bad_witnesses == 0, detail);
}

CheckResult check_containment_bruteforce(std::size_t clouds, std::uint64_t seed) {
  std::size_t queries = 0, disagreements = 0, inside = 0;
  for (std::size_t c = 0; c < clouds; ++c) {
    Philox4x32 engine(seed, 0x100000 + c);
    std::uniform_int_distribution<Index> pick_d(1, 3);
    const Index d = pick_d(engine);
    std::uniform_int_distribution<Index> pick_n(d + 1, d + 5);
    const ExactCloud cloud = random_rational_cloud(engine, pick_n(engine), d);
    for (int q = 0; q < 10; ++q) {
      RationalVector p(d);
      for (Index i = 0; i < d; ++i) p(i) = random_rational(engine) / 2;
      ExactCloud shifted = cloud;
      shifted.points.rowwise() -= p.transpose();
      if (!origin_off_all_hyperplanes(shifted)) continue;
      ++queries;
      const bool lp = contains_point(cloud, p) == Containment::inside;
      const bool brute = origin_inside_bruteforce(shifted);
      inside += lp;
      if (lp != brute) ++disagreements;
    }
  }
  return make("convex_oracle.containment_vs_facets", disagreements == 0 && queries > 0,
              std::to_string(queries) + " queries (" + std::to_string(inside) + " inside), " +
                  std::to_string(disagreements) + " disagreements");
}

CheckResult check_float_exact_agreement(std::size_t clouds, std::uint64_t seed) {
  std::size_t compared = 0, mismatches = 0, face_compared = 0, face_mismatches = 0;
  for (std::size_t c = 0; c < clouds; ++c) {
    Philox4x32 engine(seed, 0x200000 + c);
    std::uniform_int_distribution<Index> pick_d(1, 4);
    const Index d = pick_d(engine);
    std::uniform_int_distribution<Index> pick_n(d + 1, 8);
    const Index n = pick_n(engine);
    const ExactCloud exact = random_rational_cloud(engine, n, d);
    const FloatCloud approx = to_float(exact);
    for (int q = 0; q < 5; ++q) {
      RationalVector p(d);
      for (Index i = 0; i < d; ++i) p(i) = random_rational(engine) / 2;
      const auto margin = barycentric_margin<Rational>(exact.points, p);
      if (!margin.in_affine_hull) continue;
      if (std::abs(static_cast<double>(n) * to_double(margin.margin)) <= 10 * kDefaultTolerance) continue;
      ++compared;
      const Vector<double> pf = p.unaryExpr([](const Rational& v) { return to_double(v); });
      if (contains_point(exact, p) != contains_point(approx, pf)) ++mismatches;
    }
    for (Index size = 1; size < n; ++size) {
      for_each_combination(n, size, [&](const std::vector<Index>& subset) {
        const auto f = is_face(approx, std::span<const Index>(subset));
        if (f.degenerate) return true;
        ++face_compared;
        if (f.is_face != is_face(exact, std::span<const Index>(subset)).is_face) ++face_mismatches;
        return true;
      });
    }
  }
  return make("convex_oracle.float_vs_exact", mismatches == 0 && face_mismatches == 0,
              std::to_string(compared) + " containment and " + std::to_string(face_compared) +
                  " face queries compared, " + std::to_string(mismatches + face_mismatches) + " mismatches");
}

CheckResult check_gale(std::size_t clouds, std::uint64_t seed) {
  std::size_t checked = 0, violations = 0, redraws = 0;
  for (std::size_t c = 0; c < clouds; ++c) {
    Philox4x32 engine(seed, 0x300000 + c);
    std::uniform_int_distribution<Index> pick_d(1, 3);
    const Index d = pick_d(engine);
    std::uniform_int_distribution<Index> pick_N(d + 2, d + 4);
    const Index N = pick_N(engine);
    ExactCloud primal;
    std::vector<std::vector<Index>> dual_facets;
    for (int attempt = 0;; ++attempt) {
      if (attempt > kMaxCloudRedraws) throw std::runtime_error("check_gale: no admissible cloud");
      primal = centered(random_rational_cloud(engine, N, d));
      if (!origin_off_all_hyperplanes(primal)) {
        ++redraws;
        continue;
      }
      try {
        dual_facets = facets_bruteforce(gale_transform(primal));
        break;
      } catch (const GeneralPositionError&) {
        ++redraws;
      }
    }
    for (Index size = 1; size < N; ++size) {
      for_each_combination(N, size, [&](const std::vector<Index>& subset) {
        ++checked;
        const bool inside = origin_inside_bruteforce(rows_of(primal, subset));
        const auto rest = complement_of(subset, N);
        const bool face = is_face_bruteforce(dual_facets, N, std::span<const Index>(rest));
        if (inside != face) ++violations;
        return true;
      });
    }
  }
  return make("convex_oracle.gale_correspondence", violations == 0,
              std::to_string(clouds) + " clouds, " + std::to_string(checked) + " subsets, " +
                  std::to_string(violations) + " violations, " + std::to_string(redraws) + " redraws");
}

CheckResult check_wendel_properties(long max_n) {
  std::size_t failures = 0;
  for (long n = 1; n <= max_n; ++n) {
    for (long d = 1; d <= max_n; ++d) {
      const Rational w = wendel_bound(n, d);
      if (w < 0 || w > 1) ++failures;
      if (d > 1 && w > wendel_bound(n, d - 1)) ++failures;
      if (n > 1 && w < wendel_bound(n - 1, d)) ++failures;
    }
  }
  return make("bounds.wendel_monotone_in_range", failures == 0,
              "n,d <= " + std::to_string(max_n) + ", " + std::to_string(failures) + " failures");
}

CheckResult check_depth_half_identity(long max_n) {
  std::size_t pairs = 0, failures = 0;
  for (long n = 2; n <= max_n; ++n) {
    for (long d = 1; d < n; ++d) {
      ++pairs;
      if (depth_lower_bound_closed_form(n, d, Rational(1, 2)) != wendel_bound(n, d)) ++failures;
    }
  }
  return make("bounds.depth_half_equals_wendel", failures == 0,
              std::to_string(pairs) + " (n,d) pairs, " + std::to_string(failures) + " mismatches");
}

CheckResult check_depth_quadrature(long max_n) {
  double worst = 0;
  std::string where;
  std::size_t points = 0;
  for (long n = 2; n <= max_n; ++n) {
    for (long d = 1; d < n; ++d) {
      for (int step = 1; step <= 10; ++step) {
        const Rational a(step, 20);
        const HighPrecision closed = to_high_precision(depth_lower_bound_closed_form(n, d, a));
        const HighPrecision quad = depth_lower_bound_quadrature(n, d, to_high_precision(a));
        ++points;
        const HighPrecision scale = closed == 0 ? HighPrecision(1) : HighPrecision(abs(closed));
        const double rel = static_cast<double>(abs(HighPrecision(quad - closed)) / scale);
        if (rel > worst) {
          worst = rel;
          where = "(n=" + std::to_string(n) + ", d=" + std::to_string(d) + ", a=" + to_string(a) + ")";
        }
      }
    }
  }
  return make("bounds.depth_quadrature_agreement", worst <= 1e-10,
              std::to_string(points) + " grid points, max relative error " + fmt(worst) + " at " + where);
}

CheckResult check_depth_reference_value() {
  const Rational a(1, 4);
  const Rational integral = depth_lower_bound_exact_integral(4, 1, a);
  const Rational closed = depth_lower_bound_closed_form(4, 1, a);
  // The uncorrected sum runs i = 0..n-d-1, i.e. the a <-> 1-a transposed tail.
  const Rational b = 1 - a;
  Rational printed = 0;
  for (long i = 0; i <= 4 - 1 - 1; ++i) {
    Rational term(binomial(4, i));
    for (long j = 0; j < i; ++j) term *= a;
    for (long j = 0; j < 4 - i; ++j) term *= b;
    printed += term;
  }
  printed += a * a * a * a * Rational(binomial(3, 1));
  const bool ok = integral == Rational(35, 128) && closed == integral && printed == Rational(246, 256) &&
                  printed != integral;
  return make("bounds.depth_reference_value", ok,
              "exact integral " + to_string(integral) + ", closed form " + to_string(closed) +
                  ", uncorrected sum " + to_string(printed));
}

CheckResult check_depth_below_wendel(long max_n) {
  std::size_t failures = 0;
  for (long n = 2; n <= max_n; ++n) {
    for (long d = 1; d < n; ++d) {
      const Rational w = wendel_bound(n, d);
      for (int step = 0; step <= 10; ++step) {
        if (depth_lower_bound_closed_form(n, d, Rational(step, 20)) > w) ++failures;
      }
    }
  }
  return make("bounds.depth_below_wendel", failures == 0,
              "n <= " + std::to_string(max_n) + ", " + std::to_string(failures) + " violations");
}

CheckResult check_face_nonface_forms(long max_n) {
  std::size_t checked = 0, failures = 0;
  for (long n = 2; n <= max_n; ++n) {
    for (long k = 1; k < n; ++k) {
      for (long d = 1; d <= max_n; ++d) {
        const Rational f = face_nonface_bound(n, d, k);
        // Flat of dimension k-1 against the other n-k points.
        Rational direct = 0;
        const long m = n - k;
        for (long i = 0; i <= m - (d - (k - 1)) - 1; ++i) direct += Rational(binomial(m - 1, i));
        direct /= Rational(pow2(static_cast<unsigned>(m - 1)));
        ++checked;
        if (f != direct) ++failures;
        if (k - 1 < d && f != flat_intersection_bound(m, d, k - 1)) ++failures;
      }
    }
  }
  return make("bounds.face_nonface_index_forms", failures == 0,
              std::to_string(checked) + " triples, " + std::to_string(failures) + " mismatches");
}

CheckResult check_cyclic_counts(long max_N) {
  std::size_t verified = 0, failures = 0, flagged = 0, inconsistent = 0;
  std::string first;
  std::vector<Rational> params;
  for (long N = 3; N <= max_N; ++N) {
    params.clear();
    for (long t = 1; t <= N; ++t) params.emplace_back(t);
    for (long d = 1; d + 2 <= N; ++d) {
      const long e = N - d - 1;
      for (long n = d + 1; n < N; ++n) {
        if (e % 2 == 1) {
          try {
            if (cyclic_face_count(N, n, d).unverified_parity) ++flagged;
            else ++failures;
          } catch (const FormulaInconsistency&) {
            ++inconsistent;
          }
          continue;
        }
        const auto c = cyclic_face_count(N, n, d);
        const ExactCloud poly = moment_curve_cloud(N, e, params);
        const auto facets = facets_bruteforce(poly);
        std::uint64_t faces = 0;
        for_each_combination(N, N - n, [&](const std::vector<Index>& subset) {
          faces += is_face_bruteforce(facets, N, std::span<const Index>(subset));
          return true;
        });
        ++verified;
        const Rational ratio(c.count, binomial(N, n));
        if (c.unverified_parity || c.count != BigInt(faces) || ratio < 0 || ratio > 1) {
          ++failures;
          if (first.empty()) {
            first = "C(" + std::to_string(N) + "," + std::to_string(n) + "," + std::to_string(d) + ")=" +
                    c.count.str() + " vs " + std::to_string(faces);
          }
        }
      }
    }
  }
  const bool anchors = cyclic_face_count(6, 4, 3).count == 6 && cyclic_face_count(6, 5, 3).count == 6;
  std::string detail = std::to_string(verified) + " even-parity triples matched brute force with " +
                       std::to_string(failures) + " failures; odd parity: " + std::to_string(flagged) +
                       " flagged unverified, " + std::to_string(inconsistent) + " non-integral";
  if (!first.empty()) detail += "; first " + first;
  if (!anchors) detail += "; hexagon anchors wrong";
  return make("bounds.cyclic_counts_even_parity", failures == 0 && anchors && verified > 0, detail);
}

CheckResult check_limit_ratio(long N) {
  const Rational r = wendel_limit_ratio(N, 6, 3);
  const double gap = std::abs(to_double(r) - 0.5);
  return make("bounds.limit_ratio", gap <= 0.01,
              "ratio(N=" + std::to_string(N) + ", 6, 3) = " + fmt(to_double(r)) + ", |ratio - 1/2| = " + fmt(gap));
}

CheckResult check_failure_bound_decreasing() {
  const double alpha = 1.25, beta = 0.05;
  std::vector<double> values;
  std::ostringstream detail;
  for (long d : {40L, 80L, 160L}) {
    const long n = static_cast<long>(std::floor(alpha * static_cast<double>(d)));
    const long k = static_cast<long>(std::floor(beta * static_cast<double>(d)));
    values.push_back(to_double(neighborly_failure_bound(n, d, k)));
    detail << "d=" << d << ": " << fmt(values.back()) << "  ";
  }
  const bool ok = neighborliness_exponent(alpha, beta) < 0 && values[0] > values[1] && values[1] > values[2];
  return make("thresholds.failure_bound_decreasing", ok, detail.str());
}

CheckResult check_threshold_curve(double alpha_min, double alpha_max, std::size_t steps) {
  const auto rows = threshold_curve(alpha_min, alpha_max, steps);
  double worst = 0;
  std::size_t failures = 0;
  for (const auto& r : rows) {
    worst = std::max(worst, std::abs(r.neighborly.residual));
    if (!(r.neighborly.beta < r.density.beta) || r.density.beta != 2.0 - r.density.alpha) ++failures;
    const auto& scan = r.neighborly.scan;
    for (std::size_t i = 0; i + 1 < scan.size(); ++i) failures += scan[i].second >= 0;
    if (scan.empty() || scan.back().second < 0 || r.neighborly.beta > scan.back().first) ++failures;
    if (scan.size() > 1 && r.neighborly.beta < scan[scan.size() - 2].first) ++failures;
  }
  const double at125 = rho_N_prime(1.25).beta;
  const bool ok = rows.size() == steps && worst <= 1e-12 && failures == 0 && at125 >= 0.05;
  return make("thresholds.curve", ok,
              std::to_string(rows.size()) + " grid points, max |residual| " + fmt(worst) + ", " +
                  std::to_string(failures) + " ordering/bracket failures, rho_N'(1.25) = " + fmt(at125));
}

CheckResult check_exponent_properties() {
  std::size_t failures = 0, compared = 0;
  std::ostringstream detail;
  if (!(neighborliness_exponent(1.25, 0.05) < 0)) ++failures;
  for (double alpha : {1.1, 1.5, 1.9}) {
    const double limit = alpha * (binary_entropy((alpha - 1) / alpha) - 1);
    if (!(limit < 0) || std::abs(neighborliness_exponent(alpha, 1e-10) - limit) > 1e-6) ++failures;
  }
  for (int i = 0; i < 20; ++i) {
    const double alpha = 1.0 + (i + 0.5) / 20.0;
    for (int j = 0; j < 20; ++j) {
      const double beta = (j + 0.5) / 20.0;
      const double c = neighborliness_exponent(alpha, beta);
      if (std::abs(c) < 1e-12) continue;
      const double lhs = std::pow(alpha, alpha) / (std::pow(alpha - 1, alpha - 1) * std::pow(2.0, alpha));
      const double rhs = std::pow(beta, beta) * std::pow(1 - beta, 1 - beta) / std::pow(2.0, beta);
      ++compared;
      if ((c < 0) != (lhs < rhs)) ++failures;
    }
  }
  for (double delta : {0.55, 0.7, 0.8, 0.95}) {
    if (rho_delta(delta, DeltaCurve::N).beta != rho_N_prime(1.0 / delta).beta) ++failures;
    if (std::abs(rho_delta(delta, DeltaCurve::D).beta - (2.0 - 1.0 / delta)) > 1e-15) ++failures;
  }
  if (std::abs(rho_delta(0.8, DeltaCurve::D).beta - 0.75) > 1e-15) ++failures;
  const double at199 = rho_N_prime(1.99).beta;
  if (!(at199 < 0.01)) ++failures;
  detail << compared << " product-form grid comparisons; rho_N'(1.99) = " << fmt(at199) << "; " << failures
         << " failures";
  return make("thresholds.exponent_properties", failures == 0, detail.str());
}

CheckResult check_sampling(std::uint64_t draws, std::uint64_t seed) {
  std::ostringstream detail;
  bool ok = true;
  const double nd = static_cast<double>(draws);

  // Determinism per (seed, stream).
  const auto g3 = DistributionSpec::parse("gaussian", 3);
  const auto mix = DistributionSpec::parse("mixture", 4);
  for (std::uint64_t s = 0; s < 16; ++s) {
    if (sample_point(mix, SeededStream{seed, s}).x != sample_point(mix, SeededStream{seed, s}).x) ok = false;
  }

  // Ball radial law: (|x|/r)^3 is uniform in d = 3.
  const auto ball = DistributionSpec::parse("ball:2", 3);
  Philox4x32 eb(seed, 1);
  std::vector<double> u(static_cast<std::size_t>(draws));
  for (auto& v : u) v = std::pow(sample_point(ball, eb).x.norm() / 2.0, 3.0);
  std::sort(u.begin(), u.end());
  double ks = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    ks = std::max({ks, (static_cast<double>(i) + 1) / nd - u[i], u[i] - static_cast<double>(i) / nd});
  }
  const double ks_crit = 1.6276 / std::sqrt(nd);
  if (!(ks < ks_crit) || u.back() > 1.0) ok = false;
  detail << "ball KS " << fmt(ks) << " (crit " << fmt(ks_crit) << ")";

  // Gaussian coordinate moments.
  Philox4x32 eg(seed, 2);
  Vector<double> sum = Vector<double>::Zero(3), sum_sq = Vector<double>::Zero(3);
  for (std::uint64_t i = 0; i < draws; ++i) {
    const Vector<double> x = sample_point(g3, eg).x;
    sum += x;
    sum_sq += x.cwiseProduct(x);
  }
  for (Index i = 0; i < 3; ++i) {
    const double mean = sum(i) / nd;
    const double var = sum_sq(i) / nd - mean * mean;
    if (std::abs(mean) > 4.0 / std::sqrt(nd) || std::abs(var - 1.0) > 0.05) ok = false;
  }
  detail << "; gaussian means " << fmt(sum(0) / nd) << "," << fmt(sum(1) / nd) << "," << fmt(sum(2) / nd);

  // Mixture branch frequency and ball-part support.
  Philox4x32 em(seed, 3);
  std::uint64_t ball_part = 0;
  const double eps = mixture_epsilon(4);
  for (std::uint64_t i = 0; i < draws; ++i) {
    const auto s = sample_point(mix, em);
    if (s.branch == MixtureBranch::ball_part) {
      ++ball_part;
      if (s.x.norm() > eps) ok = false;
    }
  }
  const double frac = static_cast<double>(ball_part) / nd;
  if (eps != 0.5 || std::abs(frac - eps) > kZ99 * std::sqrt(eps * (1 - eps) / nd)) ok = false;
  detail << "; mixture ball fraction " << fmt(frac);

  // Halfspace mass and Gaussian depth.
  if (gaussian_halfspace_mass(0) != 0.5 || std::abs(gaussian_halfspace_mass(0.1) - 0.460172) > 1e-6) ok = false;
  double prev = 0.5;
  for (int i = 0; i <= 400; ++i) {
    const double r = i * 0.01;
    const double m = gaussian_halfspace_mass(r);
    if (m > prev || m < 0.5 - r / std::sqrt(2 * M_PI)) ok = false;
    prev = m;
  }
  Vector<double> unit = Vector<double>::Zero(3);
  unit(0) = 1;
  if (std::abs(depth_of_point(g3, unit) - 0.158655) > 1e-6 || depth_of_point(g3, Vector<double>::Zero(3)) != 0.5) {
    ok = false;
  }
  return make("sampling.distributions", ok, detail.str());
}

CheckResult check_containment_covers_wendel(std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  bool ok = true;
  std::ostringstream detail;
  std::uint64_t discarded = 0, total = 0;
  for (auto [d, n] : {std::pair<Index, Index>{1, 2}, {2, 4}, {3, 6}, {4, 6}}) {
    ExperimentConfig c;
    c.spec = DistributionSpec::parse("gaussian", d);
    c.d = d;
    c.n = n;
    c.target = TargetKind::containment;
    c.trials = trials;
    c.seed = seed + static_cast<std::uint64_t>(10 * d + n);
    const Estimate e = estimate_containment(c, workers);
    const double w = to_double(wendel_bound(n, d));
    const bool covered = e.ci_low <= w && w <= e.ci_high;
    ok = ok && covered;
    discarded += e.discarded_degenerate;
    total += e.trials;
    detail << "(d=" << d << ",n=" << n << ") " << fmt(e.mean) << " [" << fmt(e.ci_low) << "," << fmt(e.ci_high)
           << "] vs " << fmt(w) << (covered ? "" : " MISS") << "; ";
  }
  const bool clean = static_cast<double>(discarded) < 0.001 * static_cast<double>(total);
  detail << "discarded " << discarded;
  return make("experiments.balanced_containment_equals_wendel", ok && clean, detail.str());
}

CheckResult check_distribution_free(std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  bool ok = true;
  std::ostringstream detail;
  std::uint64_t discarded = 0, total = 0;
  for (const char* spec : {"gaussian", "ball:1", "mixture", "cube"}) {
    for (auto [d, n] : {std::pair<Index, Index>{3, 6}, {4, 7}}) {
      ExperimentConfig c;
      c.spec = DistributionSpec::parse(spec, d);
      c.d = d;
      c.n = n;
      c.target = TargetKind::containment;
      c.trials = trials;
      c.seed = seed;
      const Estimate e = estimate_containment(c, workers);
      const double w = to_double(wendel_bound(n, d));
      const bool within = e.mean <= w + 3 * e.half_width();
      ok = ok && within;
      discarded += e.discarded_degenerate;
      total += e.trials;
      detail << spec << "(d=" << d << ",n=" << n << ") " << fmt(e.mean) << " <= " << fmt(w) << " + "
             << fmt(3 * e.half_width()) << (within ? "" : " VIOLATED") << "; ";
    }
  }
  const bool clean = static_cast<double>(discarded) < 0.001 * static_cast<double>(total);
  detail << "discarded " << discarded;
  return make("experiments.containment_below_wendel", ok && clean, detail.str());
}

CheckResult check_depth_containment_mc(std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  bool ok = true;
  std::ostringstream detail;
  for (double r : {0.0, 0.25}) {
    ExperimentConfig c;
    c.d = 2;
    c.n = 8;
    c.spec = DistributionSpec::parse("gaussian", 2);
    c.target = TargetKind::containment;
    c.trials = trials;
    c.seed = seed;
    Vector<double> p = Vector<double>::Zero(2);
    p(0) = r;
    c.query_point = p;
    const Estimate e = estimate_containment(c, workers);
    const double depth = depth_of_point(c.spec, p);
    const double bound = to_double(depth_lower_bound_closed_form(8, 2, Rational(depth)));
    const bool above = e.mean >= bound - 3 * (e.ci_high - e.ci_low);
    ok = ok && above;
    detail << "r=" << r << ": " << fmt(e.mean) << " >= " << fmt(bound) << (above ? "" : " VIOLATED") << "; ";
  }
  return make("experiments.depth_lower_bound", ok, detail.str());
}

CheckResult check_worker_determinism(std::uint64_t trials, std::uint64_t seed) {
  std::vector<ExperimentConfig> configs;
  for (auto target : {TargetKind::containment, TargetKind::face_density, TargetKind::neighborliness}) {
    ExperimentConfig c;
    c.d = 3;
    c.n = 7;
    c.spec = DistributionSpec::parse("mixture", 3);
    c.target = target;
    c.param = target == TargetKind::face_density ? 1 : 2;
    c.trials = trials;
    c.seed = seed;
    configs.push_back(c);
  }
  std::ostringstream one, many;
  run_experiment_suite(configs, 1, one);
  run_experiment_suite(configs, 8, many);
  return make("experiments.worker_determinism", one.str() == many.str(),
              "suite of " + std::to_string(configs.size()) + " configs, workers 1 vs 8");
}

std::vector<CheckResult> run_verify(const VerifyOptions& o, const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> results;
  auto run = [&](const char* name, auto&& check) {
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.name = name;
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  };
  const bool q = o.quick;
  run("linalg.reduction_and_null_space", [&] { return check_linalg(q ? 50 : 300, o.seed); });
  run("convex_oracle.exact_vs_bruteforce", [&] { return check_oracle_equivalence(q ? 20 : 200, 4, 8, o.seed); });
  run("convex_oracle.containment_vs_facets", [&] { return check_containment_bruteforce(q ? 20 : 100, o.seed); });
  run("convex_oracle.float_vs_exact", [&] { return check_float_exact_agreement(q ? 20 : 100, o.seed); });
  run("convex_oracle.gale_correspondence", [&] { return check_gale(q ? 10 : 50, o.seed); });
  run("bounds.wendel_monotone_in_range", [&] { return check_wendel_properties(q ? 30 : 60); });
  run("bounds.depth_half_equals_wendel", [&] { return check_depth_half_identity(60); });
  run("bounds.depth_quadrature_agreement", [&] { return check_depth_quadrature(q ? 20 : 40); });
  run("bounds.depth_reference_value", [&] { return check_depth_reference_value(); });
  run("bounds.depth_below_wendel", [&] { return check_depth_below_wendel(q ? 20 : 40); });
  run("bounds.face_nonface_index_forms", [&] { return check_face_nonface_forms(q ? 20 : 40); });
  run("bounds.cyclic_counts_even_parity", [&] { return check_cyclic_counts(9); });
  run("bounds.limit_ratio", [&] { return check_limit_ratio(1002); });
  run("thresholds.failure_bound_decreasing", [&] { return check_failure_bound_decreasing(); });
  run("thresholds.curve", [&] { return check_threshold_curve(1.05, 1.95, 19); });
  run("thresholds.exponent_properties", [&] { return check_exponent_properties(); });
  run("sampling.distributions", [&] { return check_sampling(q ? 20000 : 100000, o.seed); });
  run("experiments.balanced_containment_equals_wendel", [&] { return check_containment_covers_wendel(q ? 20000 : 100000, o.seed, o.workers); });
  run("experiments.containment_below_wendel", [&] { return check_distribution_free(q ? 5000 : 20000, o.seed, o.workers); });
  run("experiments.depth_lower_bound", [&] { return check_depth_containment_mc(q ? 5000 : 20000, o.seed, o.workers); });
  run("experiments.worker_determinism", [&] { return check_worker_determinism(q ? 100 : 300, o.seed); });
  return results;
}

}  // namespace neighborly
