#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mastkit/taxon.hpp"

namespace mastkit {

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

// Thrown when a tree value would violate its structural invariants, or an
// operation is handed taxa the tree does not carry.
class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two trees that must share a leaf set do not.
class TaxonMismatchError : public TreeError {
 public:
  using TreeError::TreeError;
};

// Half-open range [lo, hi) of positions in a rooted tree's leaf ordering.
struct LeafInterval {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t size() const { return hi - lo; }
  bool contains(std::size_t pos) const { return lo <= pos && pos < hi; }
  bool contains(const LeafInterval& other) const { return lo <= other.lo && other.hi <= hi; }
  friend bool operator==(const LeafInterval&, const LeafInterval&) = default;
};

LeafInterval intersect(const LeafInterval& a, const LeafInterval& b);

// Binary rooted X-tree with ordered (left, right) children.
//
// Immutable once built. Node ids are indices into an internal array; they are
// stable for the lifetime of the value and meaningless across different tree
// values. A single-leaf tree is legal: its root is the leaf.
//
// Construction precomputes the pre-order traversal, the leaf ordering Seq(T),
// and for every node the interval of Seq positions covered by its leaves, so
// that ancestor tests are O(1) and lca walks are O(depth).
class RootedTree {
 public:
  struct Node {
    NodeId parent = kNoNode;
    NodeId left = kNoNode;
    NodeId right = kNoNode;
    Taxon label;  // leaves only
  };

  RootedTree() = default;

  // Validates and takes ownership of a node array. Parent links are
  // recomputed from child links; `nodes[i].parent` is ignored.
  static RootedTree from_nodes(std::vector<Node> nodes, NodeId root);
  static RootedTree single_leaf(Taxon label);

  bool empty() const { return nodes_.empty(); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t leaf_count() const { return seq_.size(); }
  NodeId root() const { return root_; }

  bool is_leaf(NodeId v) const { return nodes_[v].left == kNoNode; }
  NodeId left(NodeId v) const { return nodes_[v].left; }
  NodeId right(NodeId v) const { return nodes_[v].right; }
  NodeId parent(NodeId v) const { return nodes_[v].parent; }
  const Taxon& label(NodeId v) const { return nodes_[v].label; }
  std::size_t depth(NodeId v) const { return depth_[v]; }
  const std::vector<Node>& nodes() const { return nodes_; }

  // Throws TreeError for an unknown taxon.
  NodeId leaf_of(std::string_view taxon) const;
  std::optional<NodeId> find_leaf(std::string_view taxon) const;
  bool has_taxon(std::string_view taxon) const { return find_leaf(taxon).has_value(); }

  // Seq(T): leaves in pre-order, left child first.
  const std::vector<Taxon>& seq() const { return seq_; }
  NodeId leaf_at(std::size_t position) const { return leaf_at_[position]; }
  std::size_t position(NodeId leaf) const { return interval_[leaf].lo; }
  LeafInterval interval(NodeId v) const { return interval_[v]; }
  std::size_t leaf_size(NodeId v) const { return interval_[v].size(); }

  std::span<const NodeId> preorder() const { return preorder_; }
  TaxonSet taxa() const;

  // Taxa of the leaves below v, in Seq order.
  std::vector<Taxon> leaves_below(NodeId v) const;

  // a is v itself or an ancestor of v. Every internal node covers strictly
  // more leaves than either child, so interval containment decides it.
  bool is_ancestor_or_self(NodeId a, NodeId v) const {
    return interval_[a].contains(interval_[v]);
  }

 private:
  void index();

  std::vector<Node> nodes_;
  NodeId root_ = kNoNode;
  std::vector<NodeId> preorder_;
  std::vector<std::size_t> depth_;
  std::vector<LeafInterval> interval_;
  std::vector<Taxon> seq_;
  std::vector<NodeId> leaf_at_;
  std::unordered_map<Taxon, NodeId> leaf_index_;
};

}  // namespace mastkit
