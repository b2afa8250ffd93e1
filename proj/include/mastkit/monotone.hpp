#pragma once

#include <vector>

#include "mastkit/taxon.hpp"

namespace mastkit {

enum class Direction { kIncreasing, kDecreasing };

struct MonotoneAlignment {
  // Subsequence of `a` that is also a subsequence of `b` (kIncreasing) or of
  // reverse(b) (kDecreasing).
  std::vector<Taxon> sequence;
  Direction direction = Direction::kIncreasing;
};

// Longest increasing vs. longest decreasing subsequence of the permutation
// i -> position of a[i] in b, whichever is longer (ties go to increasing).
// By Erdos-Szekeres the result has at least ceil(sqrt(n)) elements.
// Throws TaxonMismatchError unless a and b are permutations of one set.
MonotoneAlignment common_monotone_subsequence(const std::vector<Taxon>& a,
                                              const std::vector<Taxon>& b);

// Patience sorting; indices into `values` of one longest strictly increasing
// subsequence.
std::vector<std::size_t> longest_increasing_subsequence(const std::vector<long long>& values);

}  // namespace mastkit
