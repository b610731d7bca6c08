#include "neighborly/exact_linalg.hpp"

#include <cctype>
#include <stdexcept>

namespace neighborly {

RowEchelon row_reduce(const RationalMatrix& m) {
  RowEchelon out;
  out.reduced = m;
  RationalMatrix& r = out.reduced;
  const Index rows = r.rows();
  const Index cols = r.cols();
  Index pivot_row = 0;
  for (Index col = 0; col < cols && pivot_row < rows; ++col) {
    Index found = -1;
    for (Index i = pivot_row; i < rows; ++i) {
      if (r(i, col) != 0) {
        found = i;
        break;
      }
    }
    if (found < 0) continue;
    if (found != pivot_row) r.row(found).swap(r.row(pivot_row));
    const Rational inv = 1 / r(pivot_row, col);
    r.row(pivot_row) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == pivot_row || r(i, col) == 0) continue;
      const Rational factor = r(i, col);
      r.row(i) -= factor * r.row(pivot_row);
    }
    out.pivot_columns.push_back(col);
    ++pivot_row;
  }
  out.rank = pivot_row;
  return out;
}

Index rank(const RationalMatrix& m) { return row_reduce(m).rank; }

RationalMatrix null_space_basis(const RationalMatrix& m) {
  const RowEchelon rref = row_reduce(m);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : rref.pivot_columns) is_pivot[static_cast<std::size_t>(c)] = true;

  RationalMatrix basis = RationalMatrix::Zero(cols, cols - rref.rank);
  Index out_col = 0;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, out_col) = 1;
    for (Index i = 0; i < rref.rank; ++i) {
      basis(rref.pivot_columns[static_cast<std::size_t>(i)], out_col) = -rref.reduced(i, free);
    }
    ++out_col;
  }
  return basis;
}

Rational determinant(RationalMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix is not square");
  const Index n = m.rows();
  Rational det = 1;
  for (Index col = 0; col < n; ++col) {
    Index found = -1;
    for (Index i = col; i < n; ++i) {
      if (m(i, col) != 0) {
        found = i;
        break;
      }
    }
    if (found < 0) return Rational(0);
    if (found != col) {
      m.row(found).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Index i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      const Rational factor = m(i, col) / m(col, col);
      m.row(i).tail(n - col) -= factor * m.row(col).tail(n - col);
    }
  }
  return det;
}

bool solve(const RationalMatrix& m, const RationalVector& rhs, RationalVector& x) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  aug << m, rhs;
  const RowEchelon rref = row_reduce(aug);
  if (!rref.pivot_columns.empty() && rref.pivot_columns.back() == m.cols()) return false;
  x = RationalVector::Zero(m.cols());
  for (Index i = 0; i < rref.rank; ++i) {
    x(rref.pivot_columns[static_cast<std::size_t>(i)]) = rref.reduced(i, m.cols());
  }
  return true;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return BigInt(0);
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt pow2(unsigned e) {
  BigInt one = 1;
  return one << e;
}

BigInt parse_integer(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) negative = text[pos++] == '-';
  if (pos == text.size()) throw std::invalid_argument("cannot parse integer '" + std::string(text) + "'");
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("cannot parse integer '" + std::string(text) + "'");
    }
  }
  while (pos + 1 < text.size() && text[pos] == '0') ++pos;
  const BigInt magnitude(std::string(text.substr(pos)));
  return negative ? BigInt(-magnitude) : magnitude;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return den < 0 ? Rational(BigInt(-num), BigInt(-den)) : Rational(num, den);
}

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("cannot parse rational '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    try {
      return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      return fail();
    }
  }

  // Decimal literal: [sign] digits [. digits] [e [sign] digits]
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits += text[pos++];
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos++];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) return fail();
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) exp_negative = text[pos++] == '-';
    std::string exp_digits;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) exp_digits += text[pos++];
    if (exp_digits.empty() || exp_digits.size() > 6) return fail();
    const long e = std::stol(exp_digits);
    scale += exp_negative ? -e : e;
  }
  if (pos != text.size()) return fail();

  Rational value{parse_integer(digits)};
  BigInt ten_pow = 1;
  for (long i = 0; i < (scale < 0 ? -scale : scale); ++i) ten_pow *= 10;
  value = scale < 0 ? value / Rational(ten_pow) : value * Rational(ten_pow);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.str(); }

}  // namespace neighborly
