#include "mastkit/generators.hpp"

#include <numeric>
#include <vector>

#include "mastkit/random.hpp"

namespace mastkit {

namespace {

struct Builder {
  std::vector<std::vector<NodeId>> adj;
  std::vector<Taxon> labels;

  NodeId add(Taxon label = {}) {
    adj.emplace_back();
    labels.push_back(std::move(label));
    return static_cast<NodeId>(adj.size() - 1);
  }
  void link(NodeId a, NodeId b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  void unlink(NodeId a, NodeId b) {
    std::erase(adj[a], b);
    std::erase(adj[b], a);
  }
  UnrootedTree build() { return UnrootedTree::from_adjacency(std::move(adj), std::move(labels)); }
};

std::vector<Taxon> labels_1_to_n(std::size_t n) {
  std::vector<Taxon> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

UnrootedTree uniform(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Taxon> order = labels_1_to_n(n);
  rng.shuffle(order);

  Builder b;
  if (n == 1) {
    b.add(order[0]);
    return b.build();
  }
  std::vector<Edge> edges;
  const NodeId first = b.add(order[0]);
  const NodeId second = b.add(order[1]);
  b.link(first, second);
  edges.push_back({first, second});
  for (std::size_t i = 2; i < n; ++i) {
    const std::size_t pick = rng.below(edges.size());
    const Edge e = edges[pick];
    const NodeId mid = b.add();
    const NodeId leaf = b.add(order[i]);
    b.unlink(e.a, e.b);
    b.link(e.a, mid);
    b.link(mid, e.b);
    b.link(mid, leaf);
    edges[pick] = {e.a, mid};
    edges.push_back({mid, e.b});
    edges.push_back({mid, leaf});
  }
  return b.build();
}

UnrootedTree balanced(std::size_t n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("balanced tree needs a power-of-two n");
  Builder b;
  if (n == 1) {
    b.add("1");
    return b.build();
  }
  // Build level by level from the leaves; the top two subtrees are joined
  // directly, which is the de-rooted complete tree.
  std::vector<NodeId> level;
  for (const auto& label : labels_1_to_n(n)) level.push_back(b.add(label));
  while (level.size() > 2) {
    std::vector<NodeId> up;
    for (std::size_t i = 0; i < level.size(); i += 2) {
      const NodeId v = b.add();
      b.link(v, level[i]);
      b.link(v, level[i + 1]);
      up.push_back(v);
    }
    level = std::move(up);
  }
  b.link(level[0], level[1]);
  return b.build();
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::string to_string(TreeModel model) {
  switch (model) {
    case TreeModel::kUniform:
      return "uniform";
    case TreeModel::kCaterpillar:
      return "caterpillar";
    case TreeModel::kBalanced:
      return "balanced";
  }
  return "unknown";
}

TreeModel parse_tree_model(const std::string& name) {
  if (name == "uniform") return TreeModel::kUniform;
  if (name == "caterpillar") return TreeModel::kCaterpillar;
  if (name == "balanced") return TreeModel::kBalanced;
  throw std::invalid_argument("unknown tree model '" + name + "'");
}

UnrootedTree caterpillar_with_order(const std::vector<Taxon>& order) {
  const std::size_t n = order.size();
  if (n == 0) throw std::invalid_argument("caterpillar needs at least one leaf");
  Builder b;
  std::vector<NodeId> leaves;
  for (const auto& label : order) leaves.push_back(b.add(label));
  if (n == 1) return b.build();
  if (n == 2) {
    b.link(leaves[0], leaves[1]);
    return b.build();
  }
  NodeId prev = b.add();
  b.link(prev, leaves[0]);
  b.link(prev, leaves[1]);
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const NodeId spine = b.add();
    b.link(prev, spine);
    b.link(spine, leaves[i]);
    prev = spine;
  }
  b.link(prev, leaves[n - 1]);
  return b.build();
}

UnrootedTree generate(const GenSpec& spec) {
  if (spec.n == 0) throw std::invalid_argument("tree needs at least one leaf");
  switch (spec.model) {
    case TreeModel::kUniform:
      return uniform(spec.n, spec.seed);
    case TreeModel::kCaterpillar:
      return caterpillar_with_order(labels_1_to_n(spec.n));
    case TreeModel::kBalanced:
      return balanced(spec.n);
  }
  throw std::invalid_argument("unknown tree model");
}

std::pair<UnrootedTree, UnrootedTree> adversarial_pair(std::size_t n, std::uint64_t seed) {
  if (!is_power_of_two(n) || n < 4) {
    throw std::invalid_argument("adversarial pair needs n = 2^k with k >= 2");
  }
  std::vector<Taxon> order = labels_1_to_n(n);
  Rng rng(seed);
  rng.shuffle(order);
  return {balanced(n), caterpillar_with_order(order)};
}

}  // namespace mastkit
