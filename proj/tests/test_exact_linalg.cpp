#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <Eigen/LU>

#include "neighborly/exact_linalg.hpp"
#include "neighborly/lp.hpp"

using namespace neighborly;

namespace {

RationalMatrix from_ints(std::initializer_list<std::initializer_list<int>> rows) {
  RationalMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

RationalMatrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  RationalMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Rational(num(rng), den(rng));
  return m;
}

// Leibniz expansion, only for tiny matrices.
Rational leibniz(const RationalMatrix& m) {
  const Index n = m.rows();
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  Rational total = 0;
  do {
    int inversions = 0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Rational term = inversions % 2 ? -1 : 1;
    for (Index i = 0; i < n; ++i) term *= m(i, perm[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("rationals stay in lowest terms with positive denominator") {
  const Rational q = make_rational(6, -4);
  CHECK(numerator(q) == -3);
  CHECK(denominator(q) == 2);
  CHECK(to_string(Rational(4, 8)) == "1/2");
  CHECK(to_string(Rational(0, 7)) == "0");
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
}

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5e-1") == Rational(-3, 20));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational(""));
  CHECK(parse_rational("0.0625") == Rational(1, 16));
  CHECK(parse_rational("010") == Rational(10));
  CHECK(parse_rational("3/-6") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/x"), std::invalid_argument);
  CHECK(parse_integer("-007") == -7);
  CHECK_THROWS_AS(parse_integer("12a"), std::invalid_argument);
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("row_reduce on a known matrix") {
  const auto m = from_ints({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  const auto e = row_reduce(m);
  CHECK(e.rank == 2);
  CHECK(e.pivot_columns == std::vector<Index>{0, 1});
  const auto expected = from_ints({{1, 0, 1}, {0, 1, 1}, {0, 0, 0}});
  CHECK(e.reduced == expected);
}

TEST_CASE("reduction is idempotent and null spaces are exact") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int t = 0; t < 200; ++t) {
    RationalMatrix m = random_matrix(rng, dim(rng), dim(rng));
    if (m.rows() > 2) m.row(2) = m.row(0) - Rational(2, 3) * m.row(1);
    const auto once = row_reduce(m);
    CHECK(row_reduce(once.reduced).reduced == once.reduced);
    const RationalMatrix ns = null_space_basis(m);
    CHECK(ns.cols() == m.cols() - once.rank);
    const RationalMatrix zero = m * ns;
    for (Index i = 0; i < zero.size(); ++i) CHECK(zero.data()[i] == 0);
    CHECK(rank(m) == once.rank);
  }
}

TEST_CASE("rank agrees with floating LU on integer matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> v(-3, 3);
  for (int t = 0; t < 100; ++t) {
    RationalMatrix m(4, 5);
    Eigen::MatrixXd f(4, 5);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 5; ++j) f(i, j) = static_cast<double>(v(rng));
    if (t % 2) f.row(3) = f.row(0) + f.row(1);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 5; ++j) m(i, j) = static_cast<int>(f(i, j));
    CHECK(rank(m) == Eigen::FullPivLU<Eigen::MatrixXd>(f).rank());
  }
}

TEST_CASE("determinant matches the Leibniz expansion") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Index n = 1 + t % 4;
    const RationalMatrix m = random_matrix(rng, n, n);
    CHECK(determinant(m) == leibniz(m));
  }
  CHECK(determinant(from_ints({{1, 2}, {2, 4}})) == 0);
}

TEST_CASE("solve returns exact solutions or reports inconsistency") {
  const auto m = from_ints({{2, 1}, {1, 3}});
  RationalVector rhs(2), x;
  rhs << 3, 5;
  REQUIRE(solve(m, rhs, x));
  CHECK(x(0) == Rational(4, 5));
  CHECK(x(1) == Rational(7, 5));

  const auto singular = from_ints({{1, 1}, {2, 2}});
  rhs << 1, 3;
  CHECK_FALSE(solve(singular, rhs, x));
}

TEST_CASE("binomial and pow2 are exact big integers") {
  // Pascal's rule as an independent route.
  for (long n = 1; n <= 70; ++n)
    for (long k = 1; k < n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
  CHECK(binomial(100, 50).str() == "100891344545564193334812497256");
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(5, -1) == 0);
  CHECK(pow2(100).str() == "1267650600228229401496703205376");
}

TEST_CASE("standard-form LP: exact optimum and infeasibility") {
  // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
  RationalMatrix a = from_ints({{1, 2, 1, 0}, {3, 1, 0, 1}});
  RationalVector b(2), c(4);
  b << 4, 6;
  c << 1, 1, 0, 0;
  const auto r = solve_standard_lp<Rational>(a, b, c);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == Rational(14, 5));

  RationalMatrix infeasible = from_ints({{1, 1}});
  RationalVector nb(1), nc(2);
  nb << -1;
  nc << 1, 0;
  CHECK(solve_standard_lp<Rational>(infeasible, nb, nc).status == LpStatus::infeasible);
}

TEST_CASE("barycentric margin: interior, boundary and exterior targets") {
  RationalMatrix tri = from_ints({{0, 0}, {4, 0}, {0, 4}});
  RationalVector p(2);
  p << 1, 1;
  auto r = barycentric_margin<Rational>(tri, p);
  REQUIRE(r.in_affine_hull);
  CHECK(r.margin == Rational(1, 4));
  p << 2, 0;
  CHECK(barycentric_margin<Rational>(tri, p).margin == 0);
  p << 5, 5;
  CHECK(barycentric_margin<Rational>(tri, p).margin < 0);
}
