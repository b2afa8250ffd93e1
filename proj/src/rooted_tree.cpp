#include "mastkit/rooted_tree.hpp"

#include <algorithm>
#include <string>

namespace mastkit {

LeafInterval intersect(const LeafInterval& a, const LeafInterval& b) {
  const std::size_t lo = std::max(a.lo, b.lo);
  const std::size_t hi = std::min(a.hi, b.hi);
  return lo < hi ? LeafInterval{lo, hi} : LeafInterval{lo, lo};
}

RootedTree RootedTree::from_nodes(std::vector<Node> nodes, NodeId root) {
  const auto count = static_cast<NodeId>(nodes.size());
  if (count == 0) throw TreeError("rooted tree has no nodes");
  if (root < 0 || root >= count) throw TreeError("root id out of range");

  for (auto& node : nodes) node.parent = kNoNode;
  for (NodeId v = 0; v < count; ++v) {
    const Node& node = nodes[v];
    const bool has_left = node.left != kNoNode;
    const bool has_right = node.right != kNoNode;
    if (has_left != has_right) {
      throw TreeError("internal node " + std::to_string(v) + " must have exactly two children");
    }
    if (!has_left) {
      if (node.label.empty()) throw TreeError("leaf " + std::to_string(v) + " has no label");
      continue;
    }
    if (!node.label.empty()) throw TreeError("internal node carries a leaf label");
    for (NodeId c : {node.left, node.right}) {
      if (c < 0 || c >= count || c == root) throw TreeError("bad child id");
      if (nodes[c].parent != kNoNode) throw TreeError("node has two parents");
      nodes[c].parent = v;
    }
    if (node.left == node.right) throw TreeError("children must be distinct");
  }

  RootedTree tree;
  tree.nodes_ = std::move(nodes);
  tree.root_ = root;
  tree.index();
  if (tree.preorder_.size() != tree.nodes_.size()) {
    throw TreeError("rooted tree is not connected");
  }
  return tree;
}

RootedTree RootedTree::single_leaf(Taxon label) {
  std::vector<Node> nodes(1);
  nodes[0].label = std::move(label);
  return from_nodes(std::move(nodes), 0);
}

void RootedTree::index() {
  const std::size_t count = nodes_.size();
  preorder_.clear();
  preorder_.reserve(count);
  depth_.assign(count, 0);
  interval_.assign(count, {});
  seq_.clear();
  leaf_at_.clear();
  leaf_index_.clear();

  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (preorder_.size() >= count) break;  // cycle guard
    preorder_.push_back(v);
    const Node& node = nodes_[v];
    if (node.left == kNoNode) {
      interval_[v] = {seq_.size(), seq_.size() + 1};
      if (!leaf_index_.emplace(node.label, v).second) {
        throw TreeError("duplicate leaf label '" + node.label + "'");
      }
      seq_.push_back(node.label);
      leaf_at_.push_back(v);
      continue;
    }
    depth_[node.left] = depth_[v] + 1;
    depth_[node.right] = depth_[v] + 1;
    stack.push_back(node.right);
    stack.push_back(node.left);
  }
  for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it) {
    const Node& node = nodes_[*it];
    if (node.left != kNoNode) {
      interval_[*it] = {interval_[node.left].lo, interval_[node.right].hi};
    }
  }
}

std::optional<NodeId> RootedTree::find_leaf(std::string_view taxon) const {
  const auto it = leaf_index_.find(Taxon(taxon));
  if (it == leaf_index_.end()) return std::nullopt;
  return it->second;
}

NodeId RootedTree::leaf_of(std::string_view taxon) const {
  if (auto v = find_leaf(taxon)) return *v;
  throw TreeError("unknown taxon '" + std::string(taxon) + "'");
}

TaxonSet RootedTree::taxa() const { return make_taxon_set(seq_); }

std::vector<Taxon> RootedTree::leaves_below(NodeId v) const {
  const LeafInterval iv = interval_[v];
  return {seq_.begin() + static_cast<std::ptrdiff_t>(iv.lo),
          seq_.begin() + static_cast<std::ptrdiff_t>(iv.hi)};
}

}  // namespace mastkit
