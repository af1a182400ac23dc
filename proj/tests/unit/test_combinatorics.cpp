#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "fopim/combinatorics.hpp"
#include "fopim/config.hpp"

using namespace fopim;

TEST_CASE("binomial, factorial and floor_log2") {
  CHECK(binomial(7, 6) == 7);
  CHECK(binomial(16, 6) == 8008);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(62, 31) == 465428353255261088ull);
  CHECK_THROWS_AS(binomial(70, 35), std::overflow_error);
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
  CHECK(factorial(20) == 2432902008176640000ull);
  CHECK_THROWS(factorial(21));
  CHECK(floor_log2(1) == 0);
  CHECK(floor_log2(720) == 9);
  CHECK(floor_log2(1024) == 10);
  CHECK_THROWS(floor_log2(0));
}

TEST_CASE("combinadic rank is a lexicographic bijection") {
  for (int P : {3, 5, 7, 9}) {
    for (int N = 1; N <= P; ++N) {
      const auto total = binomial(P, N);
      std::vector<int> prev;
      for (std::uint64_t r = 0; r < total; ++r) {
        const auto s = combinadic_unrank(r, P, N);
        REQUIRE(static_cast<int>(s.size()) == N);
        CHECK(std::is_sorted(s.begin(), s.end()));
        CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
        CHECK(combinadic_rank(s, P) == r);
        if (!prev.empty()) CHECK(std::lexicographical_compare(prev.begin(), prev.end(), s.begin(), s.end()));
        prev = s;
      }
      CHECK_THROWS_AS(combinadic_unrank(total, P, N), std::out_of_range);
    }
  }
  CHECK(combinadic_unrank(0, 7, 6) == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(combinadic_unrank(6, 7, 6) == std::vector<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("combinadic rejects malformed subsets") {
  const std::vector<int> dup{1, 1, 2};
  const std::vector<int> out{0, 2, 7};
  CHECK_THROWS(combinadic_rank(dup, 7));
  CHECK_THROWS(combinadic_rank(out, 7));
}

TEST_CASE("lehmer rank enumerates permutations in lexicographic order") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::uint64_t r = 0;
    do {
      CHECK(lehmer_rank(p) == r);
      CHECK(lehmer_unrank(r, n) == p);
      ++r;
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(r == factorial(n));
    CHECK_THROWS(lehmer_unrank(r, n));
  }
  const std::vector<int> bad{0, 0, 1};
  CHECK_THROWS(lehmer_rank(bad));
}
