#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mastkit/rooted_tree.hpp"
#include "mastkit/unrooted_tree.hpp"

namespace mastkit {

// How children are designated left/right when a rooted tree is derived from
// an unrooted one.
struct Orientation {
  enum class Mode {
    kMinLabel,  // child whose subtree holds the smallest taxon goes left
    kSeeded,    // fair coin per internal node, drawn from `seed`
  };
  Mode mode = Mode::kMinLabel;
  std::uint64_t seed = 0;

  static Orientation seeded(std::uint64_t s) { return {Mode::kSeeded, s}; }
};

// Induced subtree on `taxa` with degree-2 nodes suppressed. Rooted results
// inherit the left/right order. Throws TreeError on empty or unknown taxa.
RootedTree restrict(const RootedTree& tree, const TaxonSet& taxa);
UnrootedTree restrict(const UnrootedTree& tree, const TaxonSet& taxa);

// Subdivides `e` with a new root node. Needs at least two leaves.
RootedTree root_at_edge(const UnrootedTree& tree, const Edge& e,
                        const Orientation& orient = {});

// The edge incident to the leaf with the smallest label.
Edge canonical_root_edge(const UnrootedTree& tree);

// Suppresses the root. Throws on a single-leaf tree.
UnrootedTree deroot(const RootedTree& tree);

// Swaps the children of every internal node.
RootedTree mirror(const RootedTree& tree);

NodeId lca(const RootedTree& tree, NodeId a, NodeId b);
// Throws TreeError on an empty set or unknown taxa.
NodeId lca(const RootedTree& tree, const std::vector<Taxon>& taxa);

bool is_comparable(const RootedTree& tree, NodeId a, NodeId b);

struct CaterpillarCheck {
  bool is_caterpillar = false;
  // Top-down spine ordering: sigma[i] is incomparable with the lca of
  // sigma[i+1..]. The bottom cherry is given in Seq order.
  std::vector<Taxon> ordering;
};

CaterpillarCheck caterpillar_check(const RootedTree& tree);
bool is_caterpillar(const RootedTree& tree);
bool is_caterpillar(const UnrootedTree& tree);

// Label-preserving isomorphism; child order is not significant.
bool isomorphic(const RootedTree& a, const RootedTree& b);
bool isomorphic(const UnrootedTree& a, const UnrootedTree& b);

// Canonical Newick-like string: children ordered by their smallest taxon.
// Equal strings <=> isomorphic trees. Unrooted trees are hung from the
// neighbor of their smallest leaf.
std::string canonical_form(const RootedTree& tree);
std::string canonical_form(const UnrootedTree& tree);

}  // namespace mastkit
