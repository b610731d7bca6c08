#include "neighborly/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "neighborly/errors.hpp"

namespace neighborly {

HighPrecision to_high_precision(const Rational& q) {
  return HighPrecision(numerator(q).str()) / HighPrecision(denominator(q).str());
}

namespace {

Rational rational_pow(const Rational& base, long e) {
  Rational out = 1;
  for (long i = 0; i < e; ++i) out *= base;
  return out;
}

// sum_{i=0}^{upper} C(m, i) / 2^m; empty sum when upper < 0.
Rational binomial_head(long m, long upper) {
  if (upper < 0) return Rational(0);
  BigInt sum = 0;
  for (long i = 0; i <= std::min(upper, m); ++i) sum += binomial(m, i);
  return Rational(sum, pow2(static_cast<unsigned>(m)));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

const Rational& check_probability(const Rational& p, std::string_view formula) {
  if (p < 0 || p > 1) throw std::logic_error(std::string(formula) + ": probability outside [0,1]: " + p.str());
  return p;
}

void check_depth_inputs(long n, long d, const Rational& a) {
  require(d >= 1, "depth bound: need d >= 1");
  require(n >= d + 1, "depth bound: need n >= d+1");
  require(a >= 0 && a <= Rational(1, 2), "depth bound: a must lie in [0, 1/2]");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos ? std::string() : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string_view formula_name(FormulaId id) {
  switch (id) {
    case FormulaId::wendel: return "wendel";
    case FormulaId::flat_intersection: return "flat";
    case FormulaId::face_nonface: return "face_nonface";
    case FormulaId::neighborly_failure: return "neighborly_failure";
    case FormulaId::depth_lower: return "depth_lower";
    case FormulaId::cyclic_face_count: return "cyclic";
    case FormulaId::limit_ratio: return "limit_ratio";
    case FormulaId::binary_entropy: return "entropy";
  }
  return "?";
}

FormulaId parse_formula_id(std::string_view name) {
  for (FormulaId id : {FormulaId::wendel, FormulaId::flat_intersection, FormulaId::face_nonface,
                       FormulaId::neighborly_failure, FormulaId::depth_lower, FormulaId::cyclic_face_count,
                       FormulaId::limit_ratio, FormulaId::binary_entropy}) {
    if (formula_name(id) == name) return id;
  }
  throw std::invalid_argument("unknown formula '" + std::string(name) + "'");
}

std::string_view depth_method_name(DepthMethod m) {
  switch (m) {
    case DepthMethod::closed_form: return "closed_form";
    case DepthMethod::quadrature: return "quadrature";
    case DepthMethod::exact_integral: return "exact_integral";
  }
  return "?";
}

DepthMethod parse_depth_method(std::string_view name) {
  for (DepthMethod m : {DepthMethod::closed_form, DepthMethod::quadrature, DepthMethod::exact_integral}) {
    if (depth_method_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown depth method '" + std::string(name) + "'");
}

void BoundQuery::validate() const {
  require(d >= 1, "need d >= 1");
  require(n >= 1, "need n >= 1");
  if (k) require(*k < n, "need k < n");
  if (a) require(*a >= 0 && *a <= Rational(1, 2), "need a in [0, 1/2]");
  if (N) require(*N > n, "need N > n");
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: p must lie in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

Rational wendel_bound(long n, long d) {
  require(n >= 1 && d >= 1, "wendel_bound: need n >= 1 and d >= 1");
  return check_probability(binomial_head(n - 1, n - d - 1), "wendel_bound");
}

Rational flat_intersection_bound(long n, long d, long l) {
  require(n >= 1 && d >= 1, "flat_intersection_bound: need n >= 1 and d >= 1");
  require(l >= 0 && l < d, "flat_intersection_bound: need 0 <= l < d");
  return check_probability(binomial_head(n - 1, n - (d - l) - 1), "flat_intersection_bound");
}

Rational face_nonface_bound(long n, long d, long k) {
  require(d >= 1, "face_nonface_bound: need d >= 1");
  require(k >= 1 && k < n, "face_nonface_bound: need 1 <= k < n");
  return check_probability(binomial_head(n - k - 1, n - d - 2), "face_nonface_bound");
}

Rational neighborly_failure_bound(long n, long d, long k) {
  return Rational(binomial(n, k)) * face_nonface_bound(n, d, k);
}

Rational depth_lower_bound_closed_form(long n, long d, const Rational& a) {
  check_depth_inputs(n, d, a);
  const Rational b = 1 - a;
  Rational sum = 0;
  for (long i = d + 1; i <= n; ++i) {
    sum += Rational(binomial(n, i)) * rational_pow(a, i) * rational_pow(b, n - i);
  }
  sum += rational_pow(a, n) * Rational(binomial(n - 1, d));
  return check_probability(sum, "depth_containment_lower_bound");
}

Rational depth_lower_bound_exact_integral(long n, long d, const Rational& a) {
  check_depth_inputs(n, d, a);
  const long m = n - d - 1;
  // \int_0^a y^{n-1} dy + \int_0^a (1-y)^m y^d dy, the latter expanded binomially.
  Rational integral = rational_pow(a, n) / Rational(n);
  for (long j = 0; j <= m; ++j) {
    Rational term = Rational(binomial(m, j)) * rational_pow(a, d + j + 1) / Rational(d + j + 1);
    integral += (j % 2 == 0) ? term : Rational(-term);
  }
  const Rational value = Rational(d + 1) * Rational(binomial(n, d + 1)) * integral;
  return check_probability(value, "depth_containment_lower_bound");
}

HighPrecision depth_lower_bound_quadrature(long n, long d, const HighPrecision& a, const QuadratureOptions& opts) {
  require(d >= 1 && n >= d + 1, "depth bound: need d >= 1 and n >= d+1");
  require(a >= 0 && a <= HighPrecision(0.5), "depth bound: a must lie in [0, 1/2]");
  const int m = static_cast<int>(n - d - 1);
  const int dd = static_cast<int>(d);
  auto integrand = [m, dd](const HighPrecision& y) -> HighPrecision {
    return (pow(y, m) + pow(HighPrecision(1 - y), m)) * pow(y, dd);
  };
  const HighPrecision scale = HighPrecision(d + 1) * HighPrecision(binomial(n, d + 1).str());
  return scale * adaptive_gauss_legendre<HighPrecision>(integrand, HighPrecision(0), a, opts);
}

BoundValue depth_containment_lower_bound(long n, long d, const Rational& a, DepthMethod method) {
  BoundValue out;
  out.formula = FormulaId::depth_lower;
  out.inputs.n = n;
  out.inputs.d = d;
  out.inputs.a = a;
  switch (method) {
    case DepthMethod::closed_form:
      out.exact = depth_lower_bound_closed_form(n, d, a);
      break;
    case DepthMethod::exact_integral:
      out.exact = depth_lower_bound_exact_integral(n, d, a);
      break;
    case DepthMethod::quadrature:
      check_depth_inputs(n, d, a);
      out.value = depth_lower_bound_quadrature(n, d, to_high_precision(a));
      if (out.value < 0 || out.value > 1 + HighPrecision(1e-30)) {
        throw std::logic_error("depth_containment_lower_bound: quadrature value outside [0,1]");
      }
      return out;
  }
  out.value = to_high_precision(*out.exact);
  return out;
}

CyclicCount cyclic_face_count(long N, long n, long d) {
  require(d >= 1 && n > d && N > n, "cyclic_face_count: need N > n > d >= 1");
  const long span = N - d - 1;
  const long delta = span % 2;
  BigInt sum = 0;
  for (long j = 0; j <= span / 2; ++j) {
    sum += binomial(N - 1 - j, n - 1) * binomial(n, N - 2 * j + delta);
  }
  const Rational value = Rational(N - delta * (n - 1), n) * Rational(sum);
  if (denominator(value) != 1 || value < 0) {
    throw FormulaInconsistency("cyclic_face_count(" + std::to_string(N) + "," + std::to_string(n) + "," +
                               std::to_string(d) + ") = " + value.str() + " is not a nonnegative integer" +
                               (delta ? " (unverified parity branch, N-d-1 odd)" : ""));
  }
  return CyclicCount{numerator(value), delta == 1};
}

Rational wendel_limit_ratio(long N, long n, long d) {
  require(d >= 1 && n > d && N > n, "wendel_limit_ratio: need N > n > d >= 1");
  require((N - d - 1) % 2 == 0, "wendel_limit_ratio: N-d-1 must be even");
  return Rational(cyclic_face_count(N, n, d).count, binomial(N, n));
}

BoundValue evaluate(FormulaId formula, const BoundQuery& q, DepthMethod method) {
  auto need = [&](const auto& field, const char* name) {
    if (!field) throw std::invalid_argument(std::string(formula_name(formula)) + " needs --" + name);
    return *field;
  };
  BoundValue out;
  out.formula = formula;
  out.inputs = q;
  if (formula != FormulaId::binary_entropy) q.validate();
  switch (formula) {
    case FormulaId::wendel:
      out.exact = wendel_bound(q.n, q.d);
      break;
    case FormulaId::flat_intersection:
      out.exact = flat_intersection_bound(q.n, q.d, need(q.l, "l"));
      break;
    case FormulaId::face_nonface:
      out.exact = face_nonface_bound(q.n, q.d, need(q.k, "k"));
      break;
    case FormulaId::neighborly_failure:
      out.exact = neighborly_failure_bound(q.n, q.d, need(q.k, "k"));
      break;
    case FormulaId::depth_lower: {
      BoundValue v = depth_containment_lower_bound(q.n, q.d, need(q.a, "a"), method);
      v.inputs = q;
      return v;
    }
    case FormulaId::cyclic_face_count: {
      const CyclicCount c = cyclic_face_count(need(q.N, "N"), q.n, q.d);
      out.exact = Rational(c.count);
      out.unverified_parity = c.unverified_parity;
      break;
    }
    case FormulaId::limit_ratio:
      out.exact = wendel_limit_ratio(need(q.N, "N"), q.n, q.d);
      break;
    case FormulaId::binary_entropy: {
      const Rational p = need(q.a, "a");
      out.value = HighPrecision(binary_entropy(to_double(p)));
      return out;
    }
  }
  out.value = to_high_precision(*out.exact);
  return out;
}

std::vector<BoundQuery> read_bound_queries_csv(std::istream& in, std::vector<FormulaId>& formulas) {
  std::vector<BoundQuery> queries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_csv(line);
    if (f.empty() || f[0] == "formula_id") continue;
    if (f.size() != 8) {
      throw std::invalid_argument("bound batch line " + std::to_string(line_no) +
                                  ": expected formula_id,n,d,k,l,a_num,a_den,N");
    }
    auto opt_long = [](const std::string& s) -> std::optional<long> {
      if (s.empty()) return std::nullopt;
      return std::stol(s);
    };
    BoundQuery q;
    q.n = f[1].empty() ? 0 : std::stol(f[1]);
    q.d = f[2].empty() ? 0 : std::stol(f[2]);
    q.k = opt_long(f[3]);
    q.l = opt_long(f[4]);
    if (!f[5].empty()) q.a = make_rational(parse_integer(f[5]), f[6].empty() ? BigInt(1) : parse_integer(f[6]));
    q.N = opt_long(f[7]);
    formulas.push_back(parse_formula_id(f[0]));
    queries.push_back(std::move(q));
  }
  return queries;
}

std::string format_decimal(const HighPrecision& value, int digits) {
  return value.str(digits, std::ios_base::fixed);
}

std::string format_bound(const BoundValue& v) {
  std::string out;
  if (v.exact) {
    out = to_string(*v.exact) + " (" + format_decimal(v.value) + ")";
  } else {
    out = format_decimal(v.value);
  }
  if (v.unverified_parity) out += " [unverified parity]";
  return out;
}

}  // namespace neighborly
