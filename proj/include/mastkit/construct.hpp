#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "mastkit/iteration.hpp"
#include "mastkit/rooted_tree.hpp"
#include "mastkit/unrooted_tree.hpp"

namespace mastkit {

enum class OutcomeKind { kRootedCaterpillar, kUnrootedCaterpillar, kBlockTree };

std::string to_string(OutcomeKind kind);

// Whether outcomes of this kind agree as rooted trees.
inline bool is_rooted_kind(OutcomeKind kind) { return kind != OutcomeKind::kUnrootedCaterpillar; }

struct ConstructionOutcome {
  TaxonSet agreement_set;
  OutcomeKind kind = OutcomeKind::kRootedCaterpillar;
  std::string branch;          // which step of the construction produced the set
  double claimed_bound = 0.0;  // size promised by that step
  std::size_t pair_steps = 0;  // single-taxon transitions
  std::size_t block_steps = 0; // block transitions (main construction only)
  bool desk_fallback = false;  // a promised object was missing; exact MAST filled in

  // Rooted trees the agreement refers to (the aligned set-up trees for the
  // main construction, the inputs for the weak one).
  RootedTree t_rooted;
  RootedTree s_rooted;

  std::size_t size() const { return agreement_set.size(); }
};

constexpr std::size_t kWeakC = 4;
constexpr std::size_t kMainC = 40;

// Called with the normalized state at the start of every iteration.
using IterationObserver = std::function<void(const IterationState&)>;

// Iterates good pairs until one taxon is left, or stops at the first
// greedy caterpillar. Needs seq(t) == seq(s) (std::invalid_argument).
ConstructionOutcome weak_construct(const RootedTree& t, const RootedTree& s, std::size_t n_param,
                                   std::size_t c = kWeakC,
                                   const IterationObserver& observer = {});

// Rooted trees from `setup` (pair of equal-ordering trees on the aligned
// subset) and the original n.
ConstructionOutcome weak_construct(const UnrootedTree& t, const UnrootedTree& s,
                                   const Orientation& orient = {}, std::size_t c = kWeakC,
                                   const IterationObserver& observer = {});

// Disjoint X, Y whose lcas are incomparable in both trees.
struct IncomparableSplit {
  TaxonSet x;
  TaxonSet y;
};

// No split: an agreement set found on the way instead.
struct SplitFallback {
  TaxonSet agreement;
  OutcomeKind kind = OutcomeKind::kUnrootedCaterpillar;
  std::string branch;
  double claimed_bound = 0.0;
};

using SplitResult = std::variant<IncomparableSplit, SplitFallback>;

// Interval analysis of a normalized state. Needs |X|^4 >= n_param and no
// subtree larger than max(2|X|/C, 1) (std::invalid_argument otherwise).
SplitResult strong_split(const IterationState& state, const PathDecomposition& decomp,
                         std::size_t c = kMainC);

// Normalizes and decomposes `state` first.
SplitResult strong_split(IterationState& state, std::size_t c = kMainC);

// Large good pairs, block steps from strong_split, then exact MAST on the
// remaining taxa. Needs n >= 4 and equal taxa.
ConstructionOutcome main_construct(const UnrootedTree& t, const UnrootedTree& s,
                                   const Orientation& orient = {}, std::size_t c = kMainC,
                                   const IterationObserver& observer = {});

// Same loop from a prepared set-up; the state's n_param plays the role of n.
ConstructionOutcome main_construct(Setup su, std::size_t c = kMainC,
                                   const IterationObserver& observer = {});

// Rooted kinds compare rooted restrictions; the unrooted kind compares
// de-rooted ones. Throws TreeError on taxa missing from either tree.
bool verify_agreement(const RootedTree& t, const RootedTree& s, const TaxonSet& a,
                      OutcomeKind kind);
bool verify_agreement(const UnrootedTree& t, const UnrootedTree& s, const TaxonSet& a);

// verify_agreement against the outcome's own rooted trees.
bool verify_outcome(const ConstructionOutcome& outcome);

}  // namespace mastkit
