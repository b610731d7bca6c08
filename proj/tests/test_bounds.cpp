#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "neighborly/bounds.hpp"
#include "neighborly/errors.hpp"
#include "neighborly/verification.hpp"

using namespace neighborly;

namespace {

// Complementary form 1 - sum_{i<d} C(n-1,i)/2^{n-1}, an independent route to the Wendel sum.
Rational wendel_complement(long n, long d) {
  BigInt head = 0;
  for (long i = 0; i <= d - 1; ++i) head += binomial(n - 1, i);
  return 1 - Rational(head, pow2(static_cast<unsigned>(n - 1)));
}

double hp(const HighPrecision& v) { return static_cast<double>(v); }

}  // namespace

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781245).epsilon(1e-9));
  CHECK(binary_entropy(0.1) == doctest::Approx(binary_entropy(0.9)));
  CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.5), std::domain_error);
}

TEST_CASE("wendel bound examples") {
  for (long d = 1; d <= 12; ++d) {
    CHECK(wendel_bound(d + 1, d) == Rational(1, pow2(static_cast<unsigned>(d))));
  }
  CHECK(wendel_bound(2, 1) == Rational(1, 2));
  CHECK(wendel_bound(6, 3) == Rational(1, 2));
  CHECK(wendel_bound(3, 3) == 0);
  CHECK(wendel_bound(1, 1) == 0);
}

TEST_CASE("wendel bound equals its complementary form") {
  // For n <= d the complement is negative and the sum form is the empty sum.
  for (long n = 1; n <= 40; ++n) {
    for (long d = 1; d < n; ++d) CHECK(wendel_bound(n, d) == wendel_complement(n, d));
  }
}

TEST_CASE("wendel bound monotonicity and range") {
  const auto r = check_wendel_properties(40);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("face_nonface and union bound examples") {
  CHECK(face_nonface_bound(7, 6, 2) == 0);
  CHECK(face_nonface_bound(5, 6, 1) == 0);
  CHECK(face_nonface_bound(9, 6, 2) == Rational(7, 64));
  CHECK(neighborly_failure_bound(7, 6, 3) == 0);
  CHECK(neighborly_failure_bound(9, 6, 2) == Rational(63, 16));
  CHECK(neighborly_failure_bound(20, 16, 2) == Rational(29260, 131072));
  CHECK_THROWS(face_nonface_bound(5, 2, 5));
  CHECK_THROWS(face_nonface_bound(5, 2, 0));
}

TEST_CASE("face_nonface bound matches the flat-intersection form") {
  const auto r = check_face_nonface_forms(30);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("flat intersection bound") {
  // A point (l = 0) recovers the Wendel bound.
  for (long n = 1; n <= 20; ++n)
    for (long d = 1; d <= 10; ++d) CHECK(flat_intersection_bound(n, d, 0) == wendel_bound(n, d));
  CHECK_THROWS(flat_intersection_bound(5, 2, 2));
}

TEST_CASE("depth lower bound examples") {
  CHECK(depth_lower_bound_closed_form(6, 2, 0) == 0);
  CHECK(depth_lower_bound_exact_integral(6, 2, 0) == 0);
  CHECK(depth_lower_bound_exact_integral(4, 1, Rational(1, 4)) == Rational(35, 128));
  CHECK(depth_lower_bound_closed_form(4, 1, Rational(1, 4)) == Rational(35, 128));
  CHECK(hp(depth_lower_bound_quadrature(4, 1, HighPrecision(0.25))) == doctest::Approx(0.2734375).epsilon(1e-14));
  CHECK_THROWS(depth_lower_bound_closed_form(4, 1, Rational(3, 4)));
  CHECK_THROWS(depth_lower_bound_closed_form(4, 1, Rational(-1, 4)));
  CHECK_THROWS(depth_lower_bound_closed_form(3, 3, Rational(1, 4)));
}

TEST_CASE("depth lower bound: uncorrected sum disagrees, corrected one does not") {
  const auto r = check_depth_reference_value();
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("depth lower bound at a = 1/2 is the Wendel bound") {
  const auto r = check_depth_half_identity(40);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("three depth routes agree") {
  for (long n = 2; n <= 25; ++n) {
    for (long d = 1; d < n; ++d) {
      for (int s = 1; s <= 10; ++s) {
        const Rational a(s, 20);
        const Rational closed = depth_lower_bound_closed_form(n, d, a);
        CHECK(closed == depth_lower_bound_exact_integral(n, d, a));
        const HighPrecision quad = depth_lower_bound_quadrature(n, d, to_high_precision(a));
        const HighPrecision ref = to_high_precision(closed);
        CHECK(hp(abs(HighPrecision(quad - ref))) <= 1e-12 * std::max(1e-300, hp(ref)));
      }
    }
  }
}

TEST_CASE("depth lower bound never exceeds the balanced value") {
  const auto r = check_depth_below_wendel(30);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("depth_containment_lower_bound dispatch") {
  const auto c = depth_containment_lower_bound(4, 1, Rational(1, 4), DepthMethod::closed_form);
  REQUIRE(c.exact);
  CHECK(*c.exact == Rational(35, 128));
  const auto q = depth_containment_lower_bound(4, 1, Rational(1, 4), DepthMethod::quadrature);
  CHECK_FALSE(q.exact);
  CHECK(hp(q.value) == doctest::Approx(35.0 / 128).epsilon(1e-14));
}

TEST_CASE("cyclic face counts") {
  CHECK(cyclic_face_count(6, 4, 3).count == 6);
  CHECK(cyclic_face_count(6, 5, 3).count == 6);
  CHECK_FALSE(cyclic_face_count(6, 4, 3).unverified_parity);
  CHECK_THROWS(cyclic_face_count(6, 6, 3));
  CHECK_THROWS(cyclic_face_count(6, 3, 3));
}

TEST_CASE("cyclic counts match moment-curve face enumeration for even parity") {
  const auto r = check_cyclic_counts(9);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("odd parity is flagged or rejected, never passed off as verified") {
  // The 3-polytope with 6 vertices has 8 facets; the odd-parity formula gives 0 here.
  const auto c = cyclic_face_count(6, 3, 2);
  CHECK(c.unverified_parity);
  CHECK(c.count == 0);
  for (long N = 4; N <= 12; ++N) {
    for (long d = 1; d + 2 <= N; ++d) {
      if ((N - d - 1) % 2 == 0) continue;
      for (long n = d + 1; n < N; ++n) {
        bool flagged = false;
        try {
          flagged = cyclic_face_count(N, n, d).unverified_parity;
        } catch (const FormulaInconsistency&) {
          flagged = true;
        }
        CHECK(flagged);
      }
    }
  }
}

TEST_CASE("limit ratio") {
  const double at1002 = to_double(wendel_limit_ratio(1002, 6, 3));
  CHECK(std::abs(at1002 - 0.5) <= 0.01);
  for (long N : {102L, 1002L, 4002L}) {
    const Rational r = wendel_limit_ratio(N, 6, 3);
    CHECK(r >= 0);
  }
  CHECK(std::abs(to_double(wendel_limit_ratio(4002, 6, 3)) - 0.5) <= 0.001);
  CHECK_THROWS(wendel_limit_ratio(1001, 6, 3));
}

TEST_CASE("evaluate and format") {
  BoundQuery q;
  q.n = 6;
  q.d = 3;
  CHECK(format_bound(evaluate(FormulaId::wendel, q)) == "1/2 (0.500000000000)");
  q.n = 4;
  q.d = 1;
  q.a = Rational(1, 4);
  CHECK(format_bound(evaluate(FormulaId::depth_lower, q)) == "35/128 (0.273437500000)");
  CHECK(format_bound(evaluate(FormulaId::depth_lower, q, DepthMethod::quadrature)) == "0.273437500000");

  BoundQuery c;
  c.N = 7;
  c.n = 4;
  c.d = 3;
  CHECK(format_bound(evaluate(FormulaId::cyclic_face_count, c)).find("[unverified parity]") != std::string::npos);

  BoundQuery missing;
  missing.n = 9;
  missing.d = 6;
  CHECK_THROWS_AS(evaluate(FormulaId::face_nonface, missing), std::invalid_argument);

  BoundQuery bad;
  bad.n = 4;
  bad.d = 0;
  CHECK_THROWS_AS(evaluate(FormulaId::wendel, bad), std::invalid_argument);
}

TEST_CASE("formula names round trip") {
  for (auto f : {FormulaId::wendel, FormulaId::flat_intersection, FormulaId::face_nonface,
                 FormulaId::neighborly_failure, FormulaId::depth_lower, FormulaId::cyclic_face_count,
                 FormulaId::limit_ratio, FormulaId::binary_entropy}) {
    CHECK(parse_formula_id(formula_name(f)) == f);
  }
  CHECK_THROWS(parse_formula_id("nope"));
}

TEST_CASE("batch CSV parsing") {
  std::stringstream in(
      "formula_id,n,d,k,l,a_num,a_den,N\n"
      "wendel,6,3,,,,,\n"
      "depth_lower,4,1,,,1,4,\n"
      "cyclic,4,3,,,,,6\n");
  std::vector<FormulaId> formulas;
  const auto qs = read_bound_queries_csv(in, formulas);
  REQUIRE(qs.size() == 3);
  CHECK(formulas[1] == FormulaId::depth_lower);
  CHECK(*qs[1].a == Rational(1, 4));
  CHECK(*qs[2].N == 6);
  CHECK(evaluate(formulas[2], qs[2]).exact == Rational(6));

  std::stringstream bad("wendel,6,3\n");
  CHECK_THROWS(read_bound_queries_csv(bad, formulas));
}

TEST_CASE("threshold consistency: union bound shrinks with d below the threshold") {
  const auto r = check_failure_bound_decreasing();
  INFO(r.detail);
  CHECK(r.passed);
}
