#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace neighborly {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/// Arbitrary-precision rational. GMP keeps every value in lowest terms with a
/// positive denominator, and zero is stored as 0/1.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;
using Index = Eigen::Index;

struct RowEchelon {
  RationalMatrix reduced;
  Index rank = 0;
  std::vector<Index> pivot_columns;
};

/// Reduced row-echelon form (unique). Exact throughout.
RowEchelon row_reduce(const RationalMatrix& m);

/// Columns form a basis of ker(m); one column per free variable of the RREF.
RationalMatrix null_space_basis(const RationalMatrix& m);

Index rank(const RationalMatrix& m);

/// Determinant of a square matrix by exact Gaussian elimination.
Rational determinant(RationalMatrix m);

/// Solves m x = rhs exactly; returns false when the system is inconsistent.
/// Free variables are set to zero.
bool solve(const RationalMatrix& m, const RationalVector& rhs, RationalVector& x);

BigInt binomial(long n, long k);
BigInt pow2(unsigned e);

/// Decimal integer with optional sign. Leading zeros are decimal, not octal.
BigInt parse_integer(std::string_view text);

/// num/den in lowest terms with a positive denominator; throws on den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

/// Parses "p/q", an integer, or a decimal literal ("-0.125", "3e-2") into an
/// exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace neighborly
