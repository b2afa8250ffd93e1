#include "mastkit/unrooted_tree.hpp"

#include <algorithm>
#include <string>

namespace mastkit {

UnrootedTree UnrootedTree::from_adjacency(std::vector<std::vector<NodeId>> adjacency,
                                          std::vector<Taxon> labels) {
  const std::size_t count = adjacency.size();
  if (count == 0) throw TreeError("unrooted tree has no nodes");
  if (labels.size() != count) throw TreeError("label array size mismatch");

  UnrootedTree tree;
  std::size_t edge_ends = 0;
  for (std::size_t v = 0; v < count; ++v) {
    const auto& nbrs = adjacency[v];
    edge_ends += nbrs.size();
    const bool leaf = nbrs.size() <= 1;
    if (leaf) {
      if (labels[v].empty()) throw TreeError("leaf " + std::to_string(v) + " has no label");
      if (!tree.leaf_index_.emplace(labels[v], static_cast<NodeId>(v)).second) {
        throw TreeError("duplicate leaf label '" + labels[v] + "'");
      }
    } else {
      if (nbrs.size() != 3) {
        throw TreeError("internal node " + std::to_string(v) + " has degree " +
                        std::to_string(nbrs.size()) + ", expected 3");
      }
      if (!labels[v].empty()) throw TreeError("internal node carries a leaf label");
    }
    for (NodeId u : nbrs) {
      if (u < 0 || static_cast<std::size_t>(u) >= count || u == static_cast<NodeId>(v)) {
        throw TreeError("bad neighbor id");
      }
      const auto& back = adjacency[u];
      if (std::count(back.begin(), back.end(), static_cast<NodeId>(v)) != 1 ||
          std::count(nbrs.begin(), nbrs.end(), u) != 1) {
        throw TreeError("adjacency is not symmetric");
      }
    }
  }
  if (count == 1 && !adjacency[0].empty()) throw TreeError("bad single-node tree");
  if (edge_ends / 2 != count - 1) throw TreeError("unrooted tree is not a tree (edge count)");

  // Connected with n - 1 edges implies acyclic.
  std::vector<char> seen(count, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId u : adjacency[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  if (reached != count) throw TreeError("unrooted tree is not connected");

  tree.adj_ = std::move(adjacency);
  tree.labels_ = std::move(labels);
  return tree;
}

std::optional<NodeId> UnrootedTree::find_leaf(std::string_view taxon) const {
  const auto it = leaf_index_.find(Taxon(taxon));
  if (it == leaf_index_.end()) return std::nullopt;
  return it->second;
}

NodeId UnrootedTree::leaf_of(std::string_view taxon) const {
  if (auto v = find_leaf(taxon)) return *v;
  throw TreeError("unknown taxon '" + std::string(taxon) + "'");
}

bool UnrootedTree::has_edge(const Edge& e) const {
  if (e.a < 0 || e.b < 0 || static_cast<std::size_t>(e.a) >= adj_.size() ||
      static_cast<std::size_t>(e.b) >= adj_.size()) {
    return false;
  }
  const auto& nbrs = adj_[e.a];
  return std::find(nbrs.begin(), nbrs.end(), e.b) != nbrs.end();
}

TaxonSet UnrootedTree::taxa() const {
  std::vector<Taxon> out;
  out.reserve(leaf_index_.size());
  for (const auto& [label, v] : leaf_index_) out.push_back(label);
  return make_taxon_set(std::move(out));
}

std::vector<Edge> UnrootedTree::edges() const {
  std::vector<Edge> out;
  for (std::size_t v = 0; v < adj_.size(); ++v) {
    for (NodeId u : adj_[v]) {
      if (static_cast<NodeId>(v) < u) out.push_back(Edge{static_cast<NodeId>(v), u});
    }
  }
  return out;
}

}  // namespace mastkit
