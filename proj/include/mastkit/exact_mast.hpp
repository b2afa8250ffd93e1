#pragma once

#include <cstddef>
#include <stdexcept>

#include "mastkit/rooted_tree.hpp"
#include "mastkit/unrooted_tree.hpp"

namespace mastkit {

// A maximum agreement set together with the common restricted tree.
template <typename Tree>
struct MastResult {
  std::size_t size = 0;
  TaxonSet agreement_set;
  Tree witness;
};

using RootedMastResult = MastResult<RootedTree>;
using UnrootedMastResult = MastResult<UnrootedTree>;

class CapExceededError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kBruteForceCap = 10;

// O(n^2) dynamic program over node pairs; backtracking prefers child
// pairings over one-sided descents and the (left, left) pairing over the
// crossed one, which makes witnesses deterministic. Throws
// TaxonMismatchError when the leaf sets differ.
RootedMastResult rooted_mast(const RootedTree& t, const RootedTree& s);

// Maximum over leaves x of 1 + rooted_mast of the two trees with x removed
// and rooted at x's former attachment point. Trees with at most three
// leaves always agree.
UnrootedMastResult unrooted_mast(const UnrootedTree& t, const UnrootedTree& s);

// Exhaustive oracle: subsets in decreasing size, lexicographic within a size;
// the first agreeing subset wins. Throws CapExceededError above `cap` leaves.
RootedMastResult brute_force_mast(const RootedTree& t, const RootedTree& s,
                                  std::size_t cap = kBruteForceCap);
UnrootedMastResult brute_force_mast(const UnrootedTree& t, const UnrootedTree& s,
                                    std::size_t cap = kBruteForceCap);

// Throws TaxonMismatchError unless both trees carry the same taxa.
template <typename Tree>
void require_same_taxa(const Tree& t, const Tree& s) {
  if (t.leaf_count() != s.leaf_count() || t.taxa() != s.taxa()) {
    throw TaxonMismatchError("trees are not on the same taxon set");
  }
}

}  // namespace mastkit
