#include "fopim/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

#include "fopim/config.hpp"

namespace fopim {

std::uint64_t combinadic_rank(std::span<const int> subset, int pool) {
  const int count = static_cast<int>(subset.size());
  if (count > pool) throw std::invalid_argument("combinadic_rank: subset larger than pool");
  std::uint64_t rank = 0;
  int prev = -1;
  for (int i = 0; i < count; ++i) {
    const int c = subset[static_cast<std::size_t>(i)];
    if (c <= prev || c >= pool) throw std::invalid_argument("combinadic_rank: subset must be sorted, distinct, in range");
    for (int v = prev + 1; v < c; ++v) rank += binomial(pool - 1 - v, count - 1 - i);
    prev = c;
  }
  return rank;
}

std::vector<int> combinadic_unrank(std::uint64_t rank, int pool, int count) {
  if (count < 0 || count > pool) throw std::invalid_argument("combinadic_unrank: bad sizes");
  if (rank >= binomial(pool, count)) throw std::out_of_range("combinadic_unrank: rank >= C(P,N)");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count));
  int v = 0;
  for (int i = 0; i < count; ++i) {
    for (;; ++v) {
      const std::uint64_t block = binomial(pool - 1 - v, count - 1 - i);
      if (rank < block) break;
      rank -= block;
    }
    out.push_back(v++);
  }
  return out;
}

std::uint64_t lehmer_rank(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int x : perm) {
    if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)]) throw std::invalid_argument("lehmer_rank: not a permutation");
    seen[static_cast<std::size_t>(x)] = true;
  }
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += perm[static_cast<std::size_t>(j)] < perm[static_cast<std::size_t>(i)];
    rank = rank * static_cast<std::uint64_t>(n - i) + static_cast<std::uint64_t>(smaller);
  }
  return rank;
}

std::vector<int> lehmer_unrank(std::uint64_t rank, int n) {
  if (n < 0) throw std::invalid_argument("lehmer_unrank: n < 0");
  if (rank >= factorial(n)) throw std::out_of_range("lehmer_unrank: rank >= N!");
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    const auto radix = static_cast<std::uint64_t>(n - i);
    digits[static_cast<std::size_t>(i)] = static_cast<int>(rank % radix);
    rank /= radix;
  }
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int d : digits) {
    out.push_back(pool[static_cast<std::size_t>(d)]);
    pool.erase(pool.begin() + d);
  }
  return out;
}

}  // namespace fopim
