#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "mastkit/monotone.hpp"
#include "mastkit/rooted_tree.hpp"
#include "mastkit/tree_ops.hpp"
#include "mastkit/unrooted_tree.hpp"

namespace mastkit {

// One step of the iterative agreement construction.
//
// Invariants: t and s have the same taxa and the same leaf ordering; no
// accumulated agreement taxon is still in the working set.
struct IterationState {
  RootedTree t;
  RootedTree s;
  std::vector<Taxon> agreement;  // in insertion order
  std::size_t n_param = 0;       // the n whose log appears in thresholds
  std::size_t iteration = 1;

  std::size_t size() const { return t.leaf_count(); }
  TaxonSet taxa() const { return t.taxa(); }
};

// Throws std::logic_error if an invariant of the state is broken.
void check_state(const IterationState& state);

struct Setup {
  RootedTree t_rooted;  // T rooted at e_T
  RootedTree s_rooted;  // S rooted at e_S, mirrored when the alignment was decreasing
  MonotoneAlignment alignment;
  IterationState state;
};

// Roots both trees, aligns their leaf orderings with a common monotone
// subsequence and restricts both to it. Needs n >= 4 and equal taxa.
Setup setup(const UnrootedTree& t, const UnrootedTree& s, const Edge& e_t, const Edge& e_s,
            const Orientation& orient = {});
Setup setup(const UnrootedTree& t, const UnrootedTree& s, const Orientation& orient = {});

// Subtree hanging off a decomposition path, with the Seq positions it covers.
struct PathSubtree {
  NodeId root = kNoNode;
  LeafInterval interval;

  std::size_t size() const { return interval.size(); }
};

// q: subtrees of t off the path from its left-most leaf up to the root
//    (q[0] is that leaf).
// r: subtrees of s off the path from its root down to the right-most leaf
//    (r.back() is that leaf).
// Both lists partition the positions left to right.
struct PathDecomposition {
  std::vector<PathSubtree> q;
  std::vector<PathSubtree> r;
};

// Mirrors both trees when the left subtree of t is smaller than its right
// subtree. Returns true if it mirrored.
bool normalize_orientation(IterationState& state);

// Decomposition of an already normalized state.
PathDecomposition decompose(const IterationState& state);

// normalize_orientation followed by decompose.
PathDecomposition path_decomposition(IterationState& state);

enum class PairTier { kLarge, kRegular };

// x together with Y such that lca(Y) lies strictly below lca(Y + x) in both
// trees, with |Y| >= |X|/C (large) or |Y| >= |X|/(2 log2 n) (regular).
struct GoodPair {
  Taxon x;
  TaxonSet y;
  PairTier tier = PairTier::kRegular;
};

// Checks every defining condition with explicit lca computations.
bool is_good_pair(const IterationState& state, const GoodPair& pair, std::size_t c);

// True when some decomposition subtree is larger than max(2|X|/C, 1).
bool has_oversized_subtree(const PathDecomposition& decomp, std::size_t n_i, std::size_t c);

// Structural search on a normalized state: a large pair built from one
// oversized subtree, or nothing when every subtree is at most
// max(2|X|/C, 1). Never returns an unverified pair.
std::optional<GoodPair> find_good_pair_structural(const IterationState& state,
                                                  const PathDecomposition& decomp,
                                                  std::size_t c);

// Regular pair from a subtree with at least |X|/log2(n) leaves. Requires that
// no subtree is oversized (throws std::invalid_argument otherwise); returns
// nothing when no subtree is that big.
std::optional<GoodPair> find_good_pair_big_subtree(const IterationState& state,
                                                   const PathDecomposition& decomp,
                                                   std::size_t c);

// Greedy left-to-right sweep picking at most one position from every q and
// every r subtree. Positions are 0-based.
std::vector<std::size_t> greedy_sweep(const PathDecomposition& decomp, std::size_t n_i);

// The same sweep started at position lo and stopped before hi.
std::vector<std::size_t> greedy_sweep(const PathDecomposition& decomp, std::size_t n_i,
                                      std::size_t lo, std::size_t hi);

// Taxa picked by greedy_sweep, in leaf order. Restricting both trees to them
// yields caterpillars that agree once de-rooted.
std::vector<Taxon> greedy_caterpillar(const IterationState& state,
                                      const PathDecomposition& decomp);

struct LargePairStep {
  GoodPair pair;
};
struct RegularPairStep {
  GoodPair pair;
};
struct CaterpillarStep {
  std::vector<Taxon> leaves;
};
using IterationStep = std::variant<LargePairStep, RegularPairStep, CaterpillarStep>;

// Structural pair, else big-subtree pair, else greedy caterpillar.
// Normalizes `state` in place. Needs |X| >= 2.
IterationStep classify_iteration(IterationState& state, std::size_t c);

// Moves the pair's x into the agreement and restricts both trees to Y.
void advance(IterationState& state, const GoodPair& pair);

// Same, for a whole block of agreement taxa.
void advance_block(IterationState& state, const std::vector<Taxon>& block, const TaxonSet& y);

// Threshold helpers. Sizes are compared exactly; logs in double precision,
// which is exact enough for n below 2^53.
bool at_least_fraction(std::size_t part, std::size_t whole, double divisor);
double log2_of(std::size_t n);

// base^k >= n, without overflow.
bool power_reaches(std::size_t base, unsigned k, std::size_t n);

// Smallest t >= 1 with t^k >= n.
std::size_t integer_root_ceil(std::size_t n, unsigned k);

TaxonSet taxa_in(const RootedTree& tree, const LeafInterval& interval);

}  // namespace mastkit
