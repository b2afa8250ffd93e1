#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mastkit/iteration.hpp"
#include "mastkit/newick.hpp"
#include "mastkit/random.hpp"

namespace mastkit::testing {

// Rooted tree on labels lo..hi-1 whose leaf order is lo, lo+1, ..., hi-1.
// Split points are drawn from rng, or taken in the middle when rng is null.
inline std::string ordered_block(int lo, int hi, Rng* rng) {
  if (hi - lo == 1) return std::to_string(lo);
  const int mid = rng ? lo + 1 + static_cast<int>(rng->below(static_cast<std::uint64_t>(hi - lo - 1)))
                      : (lo + hi) / 2;
  return "(" + ordered_block(lo, mid, rng) + "," + ordered_block(mid, hi, rng) + ")";
}

// Two rooted trees with the same leaf order 1..m: t is a left comb of the
// blocks, s a right comb of the same blocks. Decomposition subtrees of the
// pair are the blocks plus pieces of the first and last block.
inline Setup comb_setup(const std::vector<int>& block_sizes, std::size_t n_param,
                        std::uint64_t seed = 0, bool random_shapes = false) {
  Rng rng(seed);
  std::vector<std::string> blocks;
  int next = 1;
  for (int b : block_sizes) {
    blocks.push_back(ordered_block(next, next + b, random_shapes ? &rng : nullptr));
    next += b;
  }
  std::string left = blocks.front();
  for (std::size_t i = 1; i < blocks.size(); ++i) left = "(" + left + "," + blocks[i] + ")";
  std::string right = blocks.back();
  for (std::size_t i = blocks.size() - 1; i-- > 0;) right = "(" + blocks[i] + "," + right + ")";

  Setup su;
  su.t_rooted = parse_rooted_newick(left + ";");
  su.s_rooted = parse_rooted_newick(right + ";");
  su.state = {su.t_rooted, su.s_rooted, {}, n_param};
  return su;
}

inline Setup uniform_comb_setup(int blocks, int block_size, std::size_t n_param) {
  return comb_setup(std::vector<int>(static_cast<std::size_t>(blocks), block_size), n_param);
}

}  // namespace mastkit::testing
