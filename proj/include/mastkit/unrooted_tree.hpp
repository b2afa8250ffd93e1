#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mastkit/rooted_tree.hpp"

namespace mastkit {

// Undirected edge, stored with a < b.
struct Edge {
  NodeId a = kNoNode;
  NodeId b = kNoNode;

  static Edge between(NodeId u, NodeId v) { return u < v ? Edge{u, v} : Edge{v, u}; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Binary unrooted X-tree: internal nodes have degree 3, leaves degree 1.
// Trees on one leaf (a lone node) and two leaves (a single edge) are legal.
class UnrootedTree {
 public:
  UnrootedTree() = default;

  // `labels[v]` is non-empty exactly for leaves.
  static UnrootedTree from_adjacency(std::vector<std::vector<NodeId>> adjacency,
                                     std::vector<Taxon> labels);

  bool empty() const { return adj_.empty(); }
  std::size_t node_count() const { return adj_.size(); }
  std::size_t leaf_count() const { return leaf_index_.size(); }

  const std::vector<NodeId>& neighbors(NodeId v) const { return adj_[v]; }
  bool is_leaf(NodeId v) const { return adj_[v].size() <= 1; }
  const Taxon& label(NodeId v) const { return labels_[v]; }

  NodeId leaf_of(std::string_view taxon) const;
  std::optional<NodeId> find_leaf(std::string_view taxon) const;
  bool has_edge(const Edge& e) const;

  TaxonSet taxa() const;
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<NodeId>> adj_;
  std::vector<Taxon> labels_;
  std::unordered_map<Taxon, NodeId> leaf_index_;
};

}  // namespace mastkit
