// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>

#include "neighborly/bounds.hpp"
#include "neighborly/errors.hpp"
#include "neighborly/experiments.hpp"
#include "neighborly/thresholds.hpp"
#include "neighborly/verification.hpp"

using namespace neighborly;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& ex) {
    o = {false, std::string("exception: ") + ex.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    o.passed = false;
    o.detail += "; over the " + std::to_string(static_cast<int>(limit_seconds)) + " s limit";
  }
  failures += !o.passed;
  std::printf("%s %s (%.2f s): %s\n", o.passed ? "PASS" : "FAIL", id, secs, o.detail.c_str());
  std::fflush(stdout);
}

Outcome from(const CheckResult& r) { return {r.passed, r.detail}; }

Outcome both(const CheckResult& a, const CheckResult& b) {
  return {a.passed && b.passed, a.detail + " | " + b.detail};
}

ExperimentConfig config(const char* spec, Index d, Index n, TargetKind target, Index param, std::uint64_t trials,
                        std::uint64_t seed) {
  ExperimentConfig c;
  c.spec = DistributionSpec::parse(spec, d);
  c.d = d;
  c.n = n;
  c.target = target;
  c.param = param;
  c.trials = trials;
  c.seed = seed;
  return c;
}

std::string describe(const Estimate& e) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.4f [%.4f, %.4f] (%llu trials, %llu redrawn)", e.mean, e.ci_low, e.ci_high,
                static_cast<unsigned long long>(e.trials), static_cast<unsigned long long>(e.discarded_degenerate));
  return buf;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace

int main() {
  criterion("AC1 depth bound at a=1/2 equals Wendel, 1<=d<n<=60", 10,
            [] { return from(check_depth_half_identity(60)); });

  criterion("AC2 closed form vs quadrature, n<=40; (4,1,1/4)=35/128", 0,
            [] { return both(check_depth_quadrature(40), check_depth_reference_value()); });

  criterion("AC3 exact LP face test vs facet enumeration, 200 clouds", 300,
            [] { return from(check_oracle_equivalence(200, 4, 8, kSeed)); });

  criterion("AC4 Gale correspondence, 50 clouds", 0, [] { return from(check_gale(50, kSeed)); });

  criterion("AC5 cyclic counts, even parity, N<=9; odd parity flagged", 0, [] {
    Outcome o = from(check_cyclic_counts(9));
    const auto hex_a = cyclic_face_count(6, 4, 3);
    const auto hex_b = cyclic_face_count(6, 5, 3);
    const bool hex = hex_a.count == 6 && hex_b.count == 6 && !hex_a.unverified_parity && !hex_b.unverified_parity;
    BoundQuery q;
    q.N = 7;
    q.n = 4;
    q.d = 3;
    const bool flagged =
        format_bound(evaluate(FormulaId::cyclic_face_count, q)).find("[unverified parity]") != std::string::npos;
    o.passed = o.passed && hex && flagged;
    o.detail += std::string("; C(6,4,3)=") + hex_a.count.str() + " C(6,5,3)=" + hex_b.count.str() +
                "; odd-parity output flagged: " + (flagged ? "yes" : "no");
    return o;
  });

  criterion("AC6 limit ratio at N=1002 within 0.01 of 1/2", 30, [] { return from(check_limit_ratio(1002)); });

  criterion("AC7 threshold curve on alpha in [1.05, 1.95]", 0, [] {
    Outcome o = from(check_threshold_curve(1.05, 1.95, 19));
    const double beta = rho_N_prime(1.25).beta;
    o.passed = o.passed && beta >= 0.05;
    o.detail += "; rho_N'(1.25)=" + std::to_string(beta);
    return o;
  });

  criterion("AC8 gaussian containment d=3 n=6, 1e5 trials, single thread", 120, [] {
    const auto e = estimate_containment(config("gaussian", 3, 6, TargetKind::containment, 0, 100000, kSeed), 1);
    return Outcome{e.ci_low <= 0.5 && 0.5 <= e.ci_high, describe(e) + " vs 1/2"};
  });

  criterion("AC9 containment <= Wendel + 3 half-widths, 4 specs x 2 sizes", 0,
            [] { return from(check_distribution_free(20000, kSeed, workers())); });

  criterion("AC10 mixture vs gaussian at d=12 n=15 k=2, 2000 trials", 0, [] {
    const std::uint64_t trials = 2000;
    const auto gn = estimate_neighborliness(
        config("gaussian", 12, 15, TargetKind::neighborliness, 2, trials, kSeed), workers());
    const auto mn = estimate_neighborliness(
        config("mixture", 12, 15, TargetKind::neighborliness, 2, trials, kSeed + 1), workers());
    const auto gf =
        estimate_face_density(config("gaussian", 12, 15, TargetKind::face_density, 3, trials, kSeed + 2), workers());
    const auto mf =
        estimate_face_density(config("mixture", 12, 15, TargetKind::face_density, 3, trials, kSeed + 3), workers());

    const bool neighborly_ok = mn.mean <= gn.mean + mn.half_width() + gn.half_width();
    const bool density_separated = mf.mean < gf.mean - (mf.half_width() + gf.half_width());
    std::string detail = "P(2-neighborly) gaussian " + describe(gn) + ", mixture " + describe(mn) +
                         "; 3-face density gaussian " + describe(gf) + ", mixture " + describe(mf);
    if (!neighborly_ok) return Outcome{false, detail + "; mixture exceeds gaussian beyond CI slack"};
    if (density_separated) return Outcome{true, detail + "; density separated"};
    // Not separated at this budget. The criterion accepts an explicit
    // inconclusive report with trial guidance; follow the guidance too.
    const double gap = gf.mean - mf.mean;
    if (gap <= 0) return Outcome{false, detail + "; mixture density is not below the gaussian's"};
    const double scale = (mf.half_width() + gf.half_width()) / gap;
    const auto widened = std::clamp<std::uint64_t>(
        static_cast<std::uint64_t>(std::ceil(static_cast<double>(trials) * scale * scale * 1.5)), 4 * trials, 40000);
    detail += "; INCONCLUSIVE at " + std::to_string(trials) + " trials, guidance: rerun with about " +
              std::to_string(widened) + " trials per spec";
    const auto wg =
        estimate_face_density(config("gaussian", 12, 15, TargetKind::face_density, 3, widened, kSeed + 4), workers());
    const auto wm =
        estimate_face_density(config("mixture", 12, 15, TargetKind::face_density, 3, widened, kSeed + 5), workers());
    const bool separated = wm.mean < wg.mean - (wm.half_width() + wg.half_width());
    detail += "; widened run: gaussian " + describe(wg) + ", mixture " + describe(wm) +
              (separated ? ", separated" : ", still inconclusive");
    return Outcome{true, detail};
  });

  std::printf("acceptance: %d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
