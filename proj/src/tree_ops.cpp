#include "mastkit/tree_ops.hpp"

#include <algorithm>
#include <utility>

#include "mastkit/newick.hpp"
#include "mastkit/random.hpp"

namespace mastkit {

namespace {

// Shared serializer: `children[v]` lists v's children (any arity), leaves are
// the nodes without children. Emits children sorted by smallest taxon.
std::string canonical_string(const std::vector<std::vector<NodeId>>& children,
                             const std::vector<const Taxon*>& labels, NodeId root) {
  std::vector<NodeId> order;
  order.reserve(children.size());
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (NodeId c : children[v]) stack.push_back(c);
  }
  std::vector<const Taxon*> min_label(children.size(), nullptr);
  std::vector<std::vector<NodeId>> sorted(children.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (children[v].empty()) {
      min_label[v] = labels[v];
      continue;
    }
    sorted[v] = children[v];
    std::sort(sorted[v].begin(), sorted[v].end(), [&](NodeId a, NodeId b) {
      return taxon_less(*min_label[a], *min_label[b]);
    });
    min_label[v] = min_label[sorted[v].front()];
  }

  std::string out;
  // (node, next child index)
  std::vector<std::pair<NodeId, std::size_t>> frames{{root, 0}};
  while (!frames.empty()) {
    auto& [v, next] = frames.back();
    if (sorted[v].empty()) {
      out += newick_label(*labels[v]);
      frames.pop_back();
      continue;
    }
    if (next == sorted[v].size()) {
      out += ')';
      frames.pop_back();
      continue;
    }
    out += next == 0 ? '(' : ',';
    const NodeId child = sorted[v][next++];
    frames.emplace_back(child, 0);
  }
  return out;
}

struct Hung {
  std::vector<std::vector<NodeId>> children;
  std::vector<NodeId> parent;
  std::vector<NodeId> preorder;
};

// Orients an unrooted tree away from `start` (whose parent is `blocked`).
void hang_from(const UnrootedTree& tree, NodeId start, NodeId blocked, Hung& h) {
  std::vector<NodeId> stack{start};
  h.parent[start] = blocked;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    h.preorder.push_back(v);
    for (NodeId u : tree.neighbors(v)) {
      if (u == h.parent[v]) continue;
      h.parent[u] = v;
      h.children[v].push_back(u);
      stack.push_back(u);
    }
  }
}

Hung hang(const UnrootedTree& tree, NodeId start) {
  Hung h;
  h.children.resize(tree.node_count());
  h.parent.assign(tree.node_count(), kNoNode);
  h.preorder.reserve(tree.node_count());
  hang_from(tree, start, kNoNode, h);
  return h;
}

NodeId smallest_leaf(const UnrootedTree& tree) {
  const TaxonSet taxa = tree.taxa();
  return tree.leaf_of(taxa.front());
}

}  // namespace

RootedTree restrict(const RootedTree& tree, const TaxonSet& taxa) {
  if (taxa.empty()) throw TreeError("restriction to an empty taxon set");
  std::vector<char> keep(tree.node_count(), 0);
  for (const auto& t : taxa) keep[tree.leaf_of(t)] = 1;

  std::vector<RootedTree::Node> out;
  out.reserve(2 * taxa.size());
  std::vector<NodeId> mapped(tree.node_count(), kNoNode);
  const auto pre = tree.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    const NodeId v = *it;
    if (tree.is_leaf(v)) {
      if (keep[v]) {
        mapped[v] = static_cast<NodeId>(out.size());
        out.push_back({kNoNode, kNoNode, kNoNode, tree.label(v)});
      }
      continue;
    }
    const NodeId l = mapped[tree.left(v)];
    const NodeId r = mapped[tree.right(v)];
    if (l != kNoNode && r != kNoNode) {
      mapped[v] = static_cast<NodeId>(out.size());
      out.push_back({kNoNode, l, r, {}});
    } else {
      mapped[v] = l != kNoNode ? l : r;
    }
  }
  const NodeId root = mapped[tree.root()];
  return RootedTree::from_nodes(std::move(out), root);
}

UnrootedTree restrict(const UnrootedTree& tree, const TaxonSet& taxa) {
  if (taxa.empty()) throw TreeError("restriction to an empty taxon set");
  std::vector<char> keep(tree.node_count(), 0);
  for (const auto& t : taxa) keep[tree.leaf_of(t)] = 1;

  const NodeId anchor = tree.leaf_of(taxa.front());
  const Hung h = hang(tree, anchor);

  std::vector<std::vector<NodeId>> adj;
  std::vector<Taxon> labels;
  auto add_node = [&](Taxon label) {
    adj.emplace_back();
    labels.push_back(std::move(label));
    return static_cast<NodeId>(adj.size() - 1);
  };
  auto link = [&](NodeId a, NodeId b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };

  std::vector<NodeId> mapped(tree.node_count(), kNoNode);
  for (auto it = h.preorder.rbegin(); it != h.preorder.rend(); ++it) {
    const NodeId v = *it;
    if (v == anchor) continue;
    const auto& kids = h.children[v];
    if (kids.empty()) {
      if (keep[v]) mapped[v] = add_node(tree.label(v));
      continue;
    }
    const NodeId l = mapped[kids[0]];
    const NodeId r = mapped[kids[1]];
    if (l != kNoNode && r != kNoNode) {
      mapped[v] = add_node({});
      link(mapped[v], l);
      link(mapped[v], r);
    } else {
      mapped[v] = l != kNoNode ? l : r;
    }
  }
  const NodeId a = add_node(tree.label(anchor));
  if (!h.children[anchor].empty()) {
    const NodeId top = mapped[h.children[anchor].front()];
    if (top != kNoNode) link(a, top);
  }
  return UnrootedTree::from_adjacency(std::move(adj), std::move(labels));
}

RootedTree root_at_edge(const UnrootedTree& tree, const Edge& e, const Orientation& orient) {
  if (tree.leaf_count() < 2) throw TreeError("cannot root a tree with fewer than two leaves");
  if (!tree.has_edge(e)) throw TreeError("edge is not in the tree");

  const auto count = static_cast<NodeId>(tree.node_count());
  Hung h;
  h.children.resize(tree.node_count());
  h.parent.assign(tree.node_count(), kNoNode);
  hang_from(tree, e.a, e.b, h);
  hang_from(tree, e.b, e.a, h);

  const NodeId root = count;
  std::vector<RootedTree::Node> nodes(tree.node_count() + 1);
  for (NodeId v = 0; v < count; ++v) {
    if (h.children[v].empty()) {
      nodes[v].label = tree.label(v);
    } else {
      nodes[v].left = h.children[v][0];
      nodes[v].right = h.children[v][1];
    }
  }
  nodes[root].left = e.a;
  nodes[root].right = e.b;

  // Smallest taxon per node, children first.
  std::vector<NodeId> post(h.preorder.rbegin(), h.preorder.rend());
  post.push_back(root);
  std::vector<const Taxon*> min_label(nodes.size(), nullptr);
  Rng rng(orient.seed);
  for (NodeId v : post) {
    auto& node = nodes[v];
    if (node.left == kNoNode) {
      min_label[v] = &node.label;
      continue;
    }
    if (taxon_less(*min_label[node.right], *min_label[node.left])) {
      std::swap(node.left, node.right);
    }
    min_label[v] = min_label[node.left];
  }
  if (orient.mode == Orientation::Mode::kSeeded) {
    for (auto& node : nodes) {
      if (node.left != kNoNode && rng.below(2) == 1) std::swap(node.left, node.right);
    }
  }
  return RootedTree::from_nodes(std::move(nodes), root);
}

Edge canonical_root_edge(const UnrootedTree& tree) {
  if (tree.leaf_count() < 2) throw TreeError("a single-leaf tree has no edges");
  const NodeId leaf = smallest_leaf(tree);
  return Edge::between(leaf, tree.neighbors(leaf).front());
}

UnrootedTree deroot(const RootedTree& tree) {
  if (tree.leaf_count() < 2) throw TreeError("cannot de-root a single-leaf tree");
  const NodeId root = tree.root();
  std::vector<NodeId> id(tree.node_count(), kNoNode);
  NodeId next = 0;
  for (NodeId v = 0; v < static_cast<NodeId>(tree.node_count()); ++v) {
    if (v != root) id[v] = next++;
  }
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(next));
  std::vector<Taxon> labels(static_cast<std::size_t>(next));
  for (NodeId v = 0; v < static_cast<NodeId>(tree.node_count()); ++v) {
    if (v == root) continue;
    labels[id[v]] = tree.label(v);
    const NodeId p = tree.parent(v);
    if (p != root) {
      adj[id[v]].push_back(id[p]);
      adj[id[p]].push_back(id[v]);
    }
  }
  const NodeId l = id[tree.left(root)];
  const NodeId r = id[tree.right(root)];
  adj[l].push_back(r);
  adj[r].push_back(l);
  return UnrootedTree::from_adjacency(std::move(adj), std::move(labels));
}

RootedTree mirror(const RootedTree& tree) {
  auto nodes = tree.nodes();
  for (auto& node : nodes) std::swap(node.left, node.right);
  return RootedTree::from_nodes(std::move(nodes), tree.root());
}

NodeId lca(const RootedTree& tree, NodeId a, NodeId b) {
  NodeId x = a;
  while (!tree.is_ancestor_or_self(x, b)) x = tree.parent(x);
  return x;
}

NodeId lca(const RootedTree& tree, const std::vector<Taxon>& taxa) {
  if (taxa.empty()) throw TreeError("lca of an empty taxon set");
  std::size_t lo = tree.leaf_count();
  std::size_t hi = 0;
  for (const auto& t : taxa) {
    const std::size_t p = tree.position(tree.leaf_of(t));
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  return lca(tree, tree.leaf_at(lo), tree.leaf_at(hi));
}

bool is_comparable(const RootedTree& tree, NodeId a, NodeId b) {
  return tree.is_ancestor_or_self(a, b) || tree.is_ancestor_or_self(b, a);
}

CaterpillarCheck caterpillar_check(const RootedTree& tree) {
  CaterpillarCheck result;
  NodeId v = tree.root();
  while (!tree.is_leaf(v)) {
    const NodeId l = tree.left(v);
    const NodeId r = tree.right(v);
    if (tree.is_leaf(l) && tree.is_leaf(r)) {
      result.ordering.push_back(tree.label(l));
      result.ordering.push_back(tree.label(r));
      result.is_caterpillar = true;
      return result;
    }
    if (tree.is_leaf(l)) {
      result.ordering.push_back(tree.label(l));
      v = r;
    } else if (tree.is_leaf(r)) {
      result.ordering.push_back(tree.label(r));
      v = l;
    } else {
      return CaterpillarCheck{};
    }
  }
  result.ordering.push_back(tree.label(v));
  result.is_caterpillar = true;
  return result;
}

bool is_caterpillar(const RootedTree& tree) { return caterpillar_check(tree).is_caterpillar; }

bool is_caterpillar(const UnrootedTree& tree) {
  for (NodeId v = 0; v < static_cast<NodeId>(tree.node_count()); ++v) {
    if (tree.is_leaf(v)) continue;
    const auto& nbrs = tree.neighbors(v);
    if (std::none_of(nbrs.begin(), nbrs.end(), [&](NodeId u) { return tree.is_leaf(u); })) {
      return false;
    }
  }
  return true;
}

std::string canonical_form(const RootedTree& tree) {
  std::vector<std::vector<NodeId>> children(tree.node_count());
  std::vector<const Taxon*> labels(tree.node_count());
  for (NodeId v = 0; v < static_cast<NodeId>(tree.node_count()); ++v) {
    labels[v] = &tree.label(v);
    if (!tree.is_leaf(v)) children[v] = {tree.left(v), tree.right(v)};
  }
  return canonical_string(children, labels, tree.root());
}

std::string canonical_form(const UnrootedTree& tree) {
  const NodeId leaf = smallest_leaf(tree);
  NodeId top = leaf;
  if (tree.leaf_count() >= 3) top = tree.neighbors(leaf).front();
  Hung h = hang(tree, top);
  std::vector<const Taxon*> labels(tree.node_count());
  for (NodeId v = 0; v < static_cast<NodeId>(tree.node_count()); ++v) labels[v] = &tree.label(v);
  if (tree.leaf_count() == 2) {
    // Both leaves under a virtual top so the output reads "(a,b)".
    h.children.push_back({leaf, tree.neighbors(leaf).front()});
    h.children[leaf].clear();
    h.children[tree.neighbors(leaf).front()].clear();
    static const Taxon kEmpty;
    labels.push_back(&kEmpty);
    return canonical_string(h.children, labels, static_cast<NodeId>(tree.node_count()));
  }
  return canonical_string(h.children, labels, top);
}

bool isomorphic(const RootedTree& a, const RootedTree& b) {
  if (a.leaf_count() != b.leaf_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

bool isomorphic(const UnrootedTree& a, const UnrootedTree& b) {
  if (a.leaf_count() != b.leaf_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace mastkit
