#include <stdexcept>

#include "mastkit/iteration.hpp"

namespace mastkit {

namespace {

struct Frame {
  const IterationState& state;
  std::size_t n_i;
  LeafInterval t_left, t_right, s_left, s_right;
  Taxon leftmost, rightmost;

  explicit Frame(const IterationState& st) : state(st), n_i(st.size()) {
    const RootedTree& t = st.t;
    const RootedTree& s = st.s;
    t_left = t.interval(t.left(t.root()));
    t_right = t.interval(t.right(t.root()));
    s_left = s.interval(s.left(s.root()));
    s_right = s.interval(s.right(s.root()));
    leftmost = t.seq().front();
    rightmost = t.seq().back();
  }

  GoodPair pair(const Taxon& x, const LeafInterval& y, PairTier tier) const {
    return {x, taxa_in(state.t, y), tier};
  }
};

GoodPair checked(const IterationState& state, GoodPair pair, std::size_t c) {
  if (!is_good_pair(state, pair, c)) {
    throw std::logic_error("constructed good pair failed verification (x=" + pair.x + ")");
  }
  return pair;
}

}  // namespace

std::optional<GoodPair> find_good_pair_structural(const IterationState& state,
                                                  const PathDecomposition& decomp,
                                                  std::size_t c) {
  const std::size_t n_i = state.size();
  if (n_i <= 1 || !has_oversized_subtree(decomp, n_i, c)) return std::nullopt;

  const Frame f(state);
  auto oversized = [&](const PathSubtree& st) { return st.size() > 1 && st.size() * c > 2 * n_i; };
  auto enough = [&](const LeafInterval& iv) { return iv.size() * c >= n_i; };
  constexpr auto kLarge = PairTier::kLarge;

  // An oversized q subtree. Its leaves are split between the two root
  // subtrees of s, and one of the outermost leaves avoids both sides.
  for (std::size_t j = 1; j < decomp.q.size(); ++j) {
    const PathSubtree& qj = decomp.q[j];
    if (!oversized(qj)) continue;
    if (j + 1 < decomp.q.size()) {
      const LeafInterval in_left = intersect(qj.interval, f.s_left);
      if (enough(in_left)) return checked(state, f.pair(f.rightmost, in_left, kLarge), c);
      return checked(state, f.pair(f.leftmost, intersect(qj.interval, f.s_right), kLarge), c);
    }
    // qj is the right subtree of t's root.
    const LeafInterval in_right = intersect(qj.interval, f.s_right);
    if (enough(in_right)) return checked(state, f.pair(f.leftmost, in_right, kLarge), c);
    // Then s's right subtree is small, so the two left subtrees overlap on
    // at least half of the taxa.
    return checked(state, f.pair(f.rightmost, intersect(f.t_left, f.s_left), kLarge), c);
  }

  // An oversized r subtree, with the roles of the trees exchanged.
  for (std::size_t l = 0; l + 1 < decomp.r.size(); ++l) {
    const PathSubtree& rl = decomp.r[l];
    if (!oversized(rl)) continue;
    if (l > 0) {
      const LeafInterval in_right = intersect(rl.interval, f.t_right);
      if (enough(in_right)) return checked(state, f.pair(f.leftmost, in_right, kLarge), c);
      return checked(state, f.pair(f.rightmost, intersect(rl.interval, f.t_left), kLarge), c);
    }
    // rl is the left subtree of s's root; normalization makes t's left
    // subtree hold at least half of the taxa, so both prefixes overlap.
    return checked(state, f.pair(f.rightmost, intersect(rl.interval, f.t_left), kLarge), c);
  }
  throw std::logic_error("oversized subtree vanished during structural search");
}

std::optional<GoodPair> find_good_pair_big_subtree(const IterationState& state,
                                                   const PathDecomposition& decomp,
                                                   std::size_t c) {
  const std::size_t n_i = state.size();
  if (n_i < 2) return std::nullopt;
  if (has_oversized_subtree(decomp, n_i, c)) {
    throw std::invalid_argument("big-subtree search requires every subtree to be at most 2|X|/C");
  }
  const double log_n = log2_of(state.n_param);
  auto big = [&](const PathSubtree& st) { return at_least_fraction(st.size(), n_i, log_n); };
  auto half_of = [](const LeafInterval& part, const PathSubtree& whole) {
    return 2 * part.size() >= whole.size();
  };

  const Frame f(state);
  constexpr auto kRegular = PairTier::kRegular;

  for (std::size_t j = 0; j < decomp.q.size(); ++j) {
    const PathSubtree& qj = decomp.q[j];
    if (!big(qj)) continue;
    if (j + 1 < decomp.q.size()) {
      const LeafInterval in_left = intersect(qj.interval, f.s_left);
      if (half_of(in_left, qj)) return checked(state, f.pair(f.rightmost, in_left, kRegular), c);
      return checked(state, f.pair(f.leftmost, intersect(qj.interval, f.s_right), kRegular), c);
    }
    // Last q subtree: disjoint from r[0], whose leaves all lie on the left.
    return checked(state, f.pair(f.leftmost, qj.interval, kRegular), c);
  }
  for (std::size_t l = 0; l < decomp.r.size(); ++l) {
    const PathSubtree& rl = decomp.r[l];
    if (!big(rl)) continue;
    if (l > 0) {
      const LeafInterval in_right = intersect(rl.interval, f.t_right);
      if (half_of(in_right, rl)) return checked(state, f.pair(f.leftmost, in_right, kRegular), c);
      return checked(state, f.pair(f.rightmost, intersect(rl.interval, f.t_left), kRegular), c);
    }
    return checked(state, f.pair(f.rightmost, rl.interval, kRegular), c);
  }
  return std::nullopt;
}

}  // namespace mastkit
