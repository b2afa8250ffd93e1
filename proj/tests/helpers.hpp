#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "mastkit/generators.hpp"
#include "mastkit/newick.hpp"
#include "mastkit/random.hpp"
#include "mastkit/tree_ops.hpp"

namespace mastkit::testing {

inline UnrootedTree random_tree(std::size_t n, std::uint64_t seed) {
  return generate({TreeModel::kUniform, n, seed});
}

inline RootedTree random_rooted(std::size_t n, std::uint64_t seed) {
  const UnrootedTree t = random_tree(n, seed);
  if (n == 1) return RootedTree::single_leaf("1");
  const auto edges = t.edges();
  Rng rng(seed ^ 0x5bd1e995ULL);
  return root_at_edge(t, edges[rng.below(edges.size())], Orientation::seeded(seed));
}

// Random non-empty subset of `taxa`, each element kept with probability 1/2.
inline TaxonSet random_subset(const TaxonSet& taxa, Rng& rng, std::size_t min_size = 1) {
  TaxonSet out;
  while (out.size() < min_size) {
    out.clear();
    for (const auto& t : taxa) {
      if (rng.below(2) == 1) out.push_back(t);
    }
  }
  return out;
}

inline RootedTree rooted(const char* text) { return parse_rooted_newick(text); }
inline UnrootedTree unrooted(const char* text) { return parse_unrooted_newick(text); }

}  // namespace mastkit::testing
