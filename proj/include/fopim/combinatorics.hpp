#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fopim {

// Lexicographic combinadic over N-subsets of [0, pool).
std::uint64_t combinadic_rank(std::span<const int> subset, int pool);
std::vector<int> combinadic_unrank(std::uint64_t rank, int pool, int count);

// Factorial-number-system (Lehmer) rank; rank order equals lexicographic order.
std::uint64_t lehmer_rank(std::span<const int> perm);
std::vector<int> lehmer_unrank(std::uint64_t rank, int n);

}  // namespace fopim
