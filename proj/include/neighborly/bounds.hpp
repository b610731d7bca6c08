#pragma once

// Exact evaluators for the finite-n probability bounds on random polytopes:
// the Wendel-type containment bound and its flat/face variants, the union
// bound on non-neighborliness, the depth-based containment lower bound, and
// the cyclic-polytope face count with its large-N limit ratio.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "neighborly/exact_linalg.hpp"
#include "neighborly/quadrature.hpp"

namespace neighborly {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

enum class FormulaId {
  wendel,
  flat_intersection,
  face_nonface,
  neighborly_failure,
  depth_lower,
  cyclic_face_count,
  limit_ratio,
  binary_entropy,
};

std::string_view formula_name(FormulaId id);
FormulaId parse_formula_id(std::string_view name);

enum class DepthMethod { closed_form, quadrature, exact_integral };

std::string_view depth_method_name(DepthMethod m);
DepthMethod parse_depth_method(std::string_view name);

struct BoundQuery {
  long n = 0;
  long d = 0;
  std::optional<long> k;
  std::optional<long> l;
  std::optional<Rational> a;
  std::optional<long> N;

  /// Shared invariants: d >= 1, n >= 1, k < n, a in [0, 1/2], N > n.
  void validate() const;
};

struct BoundValue {
  FormulaId formula = FormulaId::wendel;
  BoundQuery inputs;
  /// Present whenever the result is an exact rational.
  std::optional<Rational> exact;
  HighPrecision value = 0;
  /// Set by the cyclic count when N-d-1 is odd (branch not cross-checked).
  bool unverified_parity = false;
};

HighPrecision to_high_precision(const Rational& q);

/// -p log2 p - (1-p) log2 (1-p), with H(0) = H(1) = 0.
double binary_entropy(double p);

/// sum_{i=0}^{n-d-1} C(n-1, i) / 2^{n-1}; 0 for an empty sum.
Rational wendel_bound(long n, long d);

/// Bound on P(an affine l-flat meets conv S):
/// sum_{i=0}^{n-(d-l)-1} C(n-1, i) / 2^{n-1}.
Rational flat_intersection_bound(long n, long d, long l);

/// sum_{i=0}^{n-d-2} C(n-k-1, i) / 2^{n-k-1}, for 1 <= k < n.
Rational face_nonface_bound(long n, long d, long k);

/// C(n, k) * face_nonface_bound(n, d, k). A union bound, so it may exceed 1.
Rational neighborly_failure_bound(long n, long d, long k);

/// Lower bound on P(p in conv S) when p has depth >= a, written as
/// (d+1) C(n, d+1) \int_0^a (y^{n-d-1} + (1-y)^{n-d-1}) y^d dy.
///
/// Closed form: sum_{i=d+1}^{n} C(n,i) a^i (1-a)^{n-i} + a^n C(n-1, d).
/// The second integral is a binomial upper tail, so the sum starts at d+1.
Rational depth_lower_bound_closed_form(long n, long d, const Rational& a);

/// Same integral, integrated term by term as a polynomial in exact arithmetic.
Rational depth_lower_bound_exact_integral(long n, long d, const Rational& a);

/// Same integral by adaptive Gauss-Legendre in 50-digit arithmetic.
HighPrecision depth_lower_bound_quadrature(long n, long d, const HighPrecision& a,
                                           const QuadratureOptions& opts = {});

BoundValue depth_containment_lower_bound(long n, long d, const Rational& a, DepthMethod method);

struct CyclicCount {
  BigInt count;
  bool unverified_parity = false;
};

/// Upper-bound-theorem count of (N-n)-subsets of an N-point simplicial
/// polytope in R^{N-d-1} that can be faces:
///   ((N - delta(n-1)) / n) sum_{j=0}^{floor((N-d-1)/2)} C(N-1-j, n-1) C(n, N-2j+delta),
///   delta = (N-d-1) mod 2.
/// Throws FormulaInconsistency if the value is not a nonnegative integer.
CyclicCount cyclic_face_count(long N, long n, long d);

/// cyclic_face_count(N, n, d) / C(N, n); requires N-d-1 even.
Rational wendel_limit_ratio(long N, long n, long d);

/// Dispatch on a formula tag; used by the CLI and batch mode.
BoundValue evaluate(FormulaId formula, const BoundQuery& query, DepthMethod method = DepthMethod::closed_form);

/// Reads rows "formula_id,n,d,k,l,a_num,a_den,N" (header optional, blank
/// fields allowed for unused parameters).
std::vector<BoundQuery> read_bound_queries_csv(std::istream& in, std::vector<FormulaId>& formulas);

/// "p/q (0.500000000000)" for exact values, decimal only otherwise.
std::string format_bound(const BoundValue& value);

/// Fixed-point decimal with `digits` places.
std::string format_decimal(const HighPrecision& value, int digits = 12);

}  // namespace neighborly
