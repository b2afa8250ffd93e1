#include "mastkit/exact_mast.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "mastkit/tree_ops.hpp"

namespace mastkit {

namespace {

class RootedDp {
 public:
  RootedDp(const RootedTree& t, const RootedTree& s) : t_(t), s_(s) {
    t_to_s_.assign(t.node_count(), kNoNode);
    s_to_t_.assign(s.node_count(), kNoNode);
    for (std::size_t p = 0; p < t.leaf_count(); ++p) {
      const NodeId a = t.leaf_at(p);
      const NodeId b = s.leaf_of(t.label(a));
      t_to_s_[a] = b;
      s_to_t_[b] = a;
    }
    index_internal(t_, t_index_, t_post_);
    index_internal(s_, s_index_, s_post_);
    table_.assign(t_post_.size() * s_post_.size(), 0);
  }

  void fill() {
    for (NodeId u : t_post_) {
      for (NodeId w : s_post_) {
        const auto opts = options(u, w);
        at(u, w) = *std::max_element(opts.begin(), opts.end());
      }
    }
  }

  std::int32_t value(NodeId u, NodeId w) const {
    if (t_.is_leaf(u)) return s_.is_ancestor_or_self(w, t_to_s_[u]) ? 1 : 0;
    if (s_.is_leaf(w)) return t_.is_ancestor_or_self(u, s_to_t_[w]) ? 1 : 0;
    return table_[static_cast<std::size_t>(t_index_[u]) * s_post_.size() + s_index_[w]];
  }

  TaxonSet backtrack() const {
    std::vector<Taxon> out;
    std::vector<std::pair<NodeId, NodeId>> stack{{t_.root(), s_.root()}};
    while (!stack.empty()) {
      const auto [u, w] = stack.back();
      stack.pop_back();
      const std::int32_t best = value(u, w);
      if (best == 0) continue;
      if (t_.is_leaf(u)) {
        out.push_back(t_.label(u));
        continue;
      }
      if (s_.is_leaf(w)) {
        out.push_back(s_.label(w));
        continue;
      }
      const auto opts = options(u, w);
      const auto pick = static_cast<std::size_t>(
          std::find(opts.begin(), opts.end(), best) - opts.begin());
      const NodeId ul = t_.left(u), ur = t_.right(u);
      const NodeId wl = s_.left(w), wr = s_.right(w);
      switch (pick) {
        case 0:
          stack.emplace_back(ul, wl);
          stack.emplace_back(ur, wr);
          break;
        case 1:
          stack.emplace_back(ul, wr);
          stack.emplace_back(ur, wl);
          break;
        case 2:
          stack.emplace_back(ul, w);
          break;
        case 3:
          stack.emplace_back(ur, w);
          break;
        case 4:
          stack.emplace_back(u, wl);
          break;
        default:
          stack.emplace_back(u, wr);
          break;
      }
    }
    return make_taxon_set(std::move(out));
  }

  std::int32_t root_value() const { return value(t_.root(), s_.root()); }

 private:
  static void index_internal(const RootedTree& tree, std::vector<std::int32_t>& index,
                             std::vector<NodeId>& post) {
    index.assign(tree.node_count(), -1);
    const auto pre = tree.preorder();
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
      if (tree.is_leaf(*it)) continue;
      index[*it] = static_cast<std::int32_t>(post.size());
      post.push_back(*it);
    }
  }

  // Both u and w internal. Order fixes the backtracking preference.
  std::array<std::int32_t, 6> options(NodeId u, NodeId w) const {
    const NodeId ul = t_.left(u), ur = t_.right(u);
    const NodeId wl = s_.left(w), wr = s_.right(w);
    return {value(ul, wl) + value(ur, wr), value(ul, wr) + value(ur, wl),
            value(ul, w),                  value(ur, w),
            value(u, wl),                  value(u, wr)};
  }

  std::int32_t& at(NodeId u, NodeId w) {
    return table_[static_cast<std::size_t>(t_index_[u]) * s_post_.size() + s_index_[w]];
  }

  const RootedTree& t_;
  const RootedTree& s_;
  std::vector<NodeId> t_to_s_, s_to_t_;
  std::vector<std::int32_t> t_index_, s_index_;
  std::vector<NodeId> t_post_, s_post_;
  std::vector<std::int32_t> table_;
};

template <typename Tree>
MastResult<Tree> checked_result(const Tree& t, const Tree& s, TaxonSet set) {
  Tree wt = restrict(t, set);
  if (!isomorphic(wt, restrict(s, set))) {
    throw std::logic_error("MAST witness failed verification");
  }
  return {set.size(), std::move(set), std::move(wt)};
}

// x removed, rooted at x's former neighbor.
RootedTree pruned_at(const UnrootedTree& tree, const Taxon& x, const TaxonSet& taxa) {
  const NodeId leaf = tree.leaf_of(x);
  const RootedTree rooted = root_at_edge(tree, Edge::between(leaf, tree.neighbors(leaf).front()));
  TaxonSet rest;
  rest.reserve(taxa.size() - 1);
  for (const auto& t : taxa) {
    if (t != x) rest.push_back(t);
  }
  return restrict(rooted, rest);
}

template <typename Tree>
MastResult<Tree> brute_force(const Tree& t, const Tree& s, std::size_t cap) {
  require_same_taxa(t, s);
  const TaxonSet taxa = t.taxa();
  const std::size_t n = taxa.size();
  if (n > cap) {
    throw CapExceededError("brute-force MAST capped at " + std::to_string(cap) + " leaves, got " +
                           std::to_string(n));
  }
  for (std::size_t k = n; k >= 1; --k) {
    // Lexicographic k-combinations of indices.
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      TaxonSet subset;
      for (std::size_t i : idx) subset.push_back(taxa[i]);
      if (isomorphic(restrict(t, subset), restrict(s, subset))) {
        return checked_result(t, s, std::move(subset));
      }
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw std::logic_error("unreachable: a single leaf always agrees");
}

}  // namespace

RootedMastResult rooted_mast(const RootedTree& t, const RootedTree& s) {
  require_same_taxa(t, s);
  RootedDp dp(t, s);
  dp.fill();
  RootedMastResult result = checked_result(t, s, dp.backtrack());
  if (result.size != static_cast<std::size_t>(dp.root_value())) {
    throw std::logic_error("MAST backtracking lost leaves");
  }
  return result;
}

UnrootedMastResult unrooted_mast(const UnrootedTree& t, const UnrootedTree& s) {
  require_same_taxa(t, s);
  const TaxonSet taxa = t.taxa();
  if (taxa.size() <= 3) return checked_result(t, s, taxa);

  std::size_t best_size = 0;
  TaxonSet best;
  for (const auto& x : taxa) {
    const RootedTree tx = pruned_at(t, x, taxa);
    const RootedTree sx = pruned_at(s, x, taxa);
    RootedDp dp(tx, sx);
    dp.fill();
    const auto size = static_cast<std::size_t>(dp.root_value()) + 1;
    if (size > best_size) {
      best_size = size;
      best = dp.backtrack();
      best.push_back(x);
      best = make_taxon_set(std::move(best));
      if (best_size == taxa.size()) break;
    }
  }
  return checked_result(t, s, std::move(best));
}

RootedMastResult brute_force_mast(const RootedTree& t, const RootedTree& s, std::size_t cap) {
  return brute_force(t, s, cap);
}

UnrootedMastResult brute_force_mast(const UnrootedTree& t, const UnrootedTree& s,
                                    std::size_t cap) {
  return brute_force(t, s, cap);
}

}  // namespace mastkit
