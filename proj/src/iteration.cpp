#include "mastkit/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mastkit {

double log2_of(std::size_t n) { return std::log2(static_cast<double>(n)); }

bool at_least_fraction(std::size_t part, std::size_t whole, double divisor) {
  return static_cast<double>(part) * divisor >= static_cast<double>(whole);
}

bool power_reaches(std::size_t base, unsigned k, std::size_t n) {
  std::size_t p = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (p >= n) return true;
    if (base != 0 && p > std::numeric_limits<std::size_t>::max() / base) return true;
    p *= base;
  }
  return p >= n;
}

std::size_t integer_root_ceil(std::size_t n, unsigned k) {
  std::size_t t = 1;
  while (!power_reaches(t, k, n)) ++t;
  return t;
}

TaxonSet taxa_in(const RootedTree& tree, const LeafInterval& interval) {
  std::vector<Taxon> out;
  out.reserve(interval.size());
  for (std::size_t p = interval.lo; p < interval.hi; ++p) out.push_back(tree.seq()[p]);
  return make_taxon_set(std::move(out));
}

void check_state(const IterationState& state) {
  if (state.t.seq() != state.s.seq()) {
    throw std::logic_error("iteration state: leaf orderings differ");
  }
  for (const auto& m : state.agreement) {
    if (state.t.has_taxon(m)) throw std::logic_error("iteration state: agreement taxon reused");
  }
}

Setup setup(const UnrootedTree& t, const UnrootedTree& s, const Edge& e_t, const Edge& e_s,
            const Orientation& orient) {
  if (t.leaf_count() != s.leaf_count() || t.taxa() != s.taxa()) {
    throw TaxonMismatchError("trees are not on the same taxon set");
  }
  if (t.leaf_count() < 4) throw std::invalid_argument("construction needs at least 4 leaves");

  Setup out;
  out.t_rooted = root_at_edge(t, e_t, orient);
  Orientation s_orient = orient;
  s_orient.seed = orient.seed ^ 0x9e3779b97f4a7c15ULL;
  out.s_rooted = root_at_edge(s, e_s, s_orient);
  out.alignment = common_monotone_subsequence(out.t_rooted.seq(), out.s_rooted.seq());
  if (out.alignment.direction == Direction::kDecreasing) out.s_rooted = mirror(out.s_rooted);

  const TaxonSet x1 = make_taxon_set(out.alignment.sequence);
  out.state.t = restrict(out.t_rooted, x1);
  out.state.s = restrict(out.s_rooted, x1);
  out.state.n_param = t.leaf_count();
  check_state(out.state);
  return out;
}

Setup setup(const UnrootedTree& t, const UnrootedTree& s, const Orientation& orient) {
  return setup(t, s, canonical_root_edge(t), canonical_root_edge(s), orient);
}

bool normalize_orientation(IterationState& state) {
  const RootedTree& t = state.t;
  if (t.is_leaf(t.root())) return false;
  if (t.leaf_size(t.left(t.root())) >= t.leaf_size(t.right(t.root()))) return false;
  state.t = mirror(state.t);
  state.s = mirror(state.s);
  return true;
}

PathDecomposition decompose(const IterationState& state) {
  PathDecomposition out;
  const RootedTree& t = state.t;
  NodeId u = t.leaf_at(0);
  out.q.push_back({u, t.interval(u)});
  while (u != t.root()) {
    const NodeId p = t.parent(u);
    const NodeId off = t.left(p) == u ? t.right(p) : t.left(p);
    out.q.push_back({off, t.interval(off)});
    u = p;
  }

  const RootedTree& s = state.s;
  NodeId w = s.root();
  while (!s.is_leaf(w)) {
    out.r.push_back({s.left(w), s.interval(s.left(w))});
    w = s.right(w);
  }
  out.r.push_back({w, s.interval(w)});
  return out;
}

PathDecomposition path_decomposition(IterationState& state) {
  normalize_orientation(state);
  return decompose(state);
}

bool is_good_pair(const IterationState& state, const GoodPair& pair, std::size_t c) {
  if (pair.y.empty() || contains(pair.y, pair.x)) return false;
  if (!state.t.has_taxon(pair.x)) return false;
  for (const auto& y : pair.y) {
    if (!state.t.has_taxon(y)) return false;
  }
  std::vector<Taxon> with_x = pair.y;
  with_x.push_back(pair.x);
  for (const RootedTree* tree : {&state.t, &state.s}) {
    const NodeId below = lca(*tree, pair.y);
    const NodeId above = lca(*tree, with_x);
    if (below == above || !tree->is_ancestor_or_self(above, below)) return false;
  }
  const std::size_t n_i = state.size();
  if (pair.tier == PairTier::kLarge) {
    return at_least_fraction(pair.y.size(), n_i, static_cast<double>(c));
  }
  return at_least_fraction(pair.y.size(), n_i, 2.0 * log2_of(state.n_param));
}

bool has_oversized_subtree(const PathDecomposition& decomp, std::size_t n_i, std::size_t c) {
  auto oversized = [&](const PathSubtree& st) { return st.size() > 1 && st.size() * c > 2 * n_i; };
  return std::any_of(decomp.q.begin(), decomp.q.end(), oversized) ||
         std::any_of(decomp.r.begin(), decomp.r.end(), oversized);
}

std::vector<std::size_t> greedy_sweep(const PathDecomposition& decomp, std::size_t n_i) {
  return greedy_sweep(decomp, n_i, 0, n_i);
}

std::vector<std::size_t> greedy_sweep(const PathDecomposition& decomp, std::size_t n_i,
                                      std::size_t lo, std::size_t hi) {
  hi = std::min(hi, n_i);
  std::vector<std::size_t> q_end(n_i, 0), r_end(n_i, 0);
  for (const auto& st : decomp.q) {
    for (std::size_t p = st.interval.lo; p < st.interval.hi; ++p) q_end[p] = st.interval.hi;
  }
  for (const auto& st : decomp.r) {
    for (std::size_t p = st.interval.lo; p < st.interval.hi; ++p) r_end[p] = st.interval.hi;
  }
  std::vector<std::size_t> picked;
  std::size_t h = lo;
  while (h < hi) {
    picked.push_back(h);
    h = std::max(q_end[h], r_end[h]);
  }
  return picked;
}

std::vector<Taxon> greedy_caterpillar(const IterationState& state,
                                      const PathDecomposition& decomp) {
  std::vector<Taxon> out;
  for (std::size_t p : greedy_sweep(decomp, state.size())) out.push_back(state.t.seq()[p]);
  return out;
}

IterationStep classify_iteration(IterationState& state, std::size_t c) {
  if (state.size() < 2) throw std::invalid_argument("classification needs at least two taxa");
  const PathDecomposition decomp = path_decomposition(state);
  if (auto pair = find_good_pair_structural(state, decomp, c)) return LargePairStep{*pair};
  if (auto pair = find_good_pair_big_subtree(state, decomp, c)) return RegularPairStep{*pair};
  return CaterpillarStep{greedy_caterpillar(state, decomp)};
}

void advance(IterationState& state, const GoodPair& pair) {
  advance_block(state, {pair.x}, pair.y);
}

void advance_block(IterationState& state, const std::vector<Taxon>& block, const TaxonSet& y) {
  for (const auto& b : block) {
    if (contains(y, b)) throw std::logic_error("agreement block overlaps the next working set");
  }
  state.agreement.insert(state.agreement.end(), block.begin(), block.end());
  state.t = restrict(state.t, y);
  state.s = restrict(state.s, y);
  ++state.iteration;
  check_state(state);
}

}  // namespace mastkit
