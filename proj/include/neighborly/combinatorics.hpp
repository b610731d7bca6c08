#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Core>

namespace neighborly {

/// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order.
/// Stops early when f returns false; returns false in that case.
template <typename F>
bool for_each_combination(Eigen::Index n, Eigen::Index k, F&& f) {
  if (k < 0 || k > n) return true;
  std::vector<Eigen::Index> subset(static_cast<std::size_t>(k));
  std::iota(subset.begin(), subset.end(), Eigen::Index{0});
  while (true) {
    if (!f(static_cast<const std::vector<Eigen::Index>&>(subset))) return false;
    Eigen::Index i = k - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return true;
    ++subset[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < k; ++j) {
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

/// C(n, k) saturating at uint64 max.
inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(result);
}

/// Complement of a sorted subset within {0..n-1}.
inline std::vector<Eigen::Index> complement_of(const std::vector<Eigen::Index>& subset, Eigen::Index n) {
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (auto i : subset) in[static_cast<std::size_t>(i)] = true;
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!in[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

}  // namespace neighborly
