#include "mastkit/construct.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "mastkit/exact_mast.hpp"
#include "mastkit/tree_ops.hpp"

namespace mastkit {

std::string to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kRootedCaterpillar: return "rooted_caterpillar";
    case OutcomeKind::kUnrootedCaterpillar: return "unrooted_caterpillar";
    case OutcomeKind::kBlockTree: return "block_tree";
  }
  return "unknown";
}

namespace {

TaxonSet union_of(const std::vector<Taxon>& a, const TaxonSet& b) {
  std::vector<Taxon> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return make_taxon_set(std::move(all));
}

double weak_rooted_bound(std::size_t n_param) {
  if (n_param < 2) return 1.0;
  const double log_n = log2_of(n_param);
  return std::ceil(0.5 * log_n / std::log2(2.0 * log_n)) + 1.0;
}

}  // namespace

ConstructionOutcome weak_construct(const RootedTree& t, const RootedTree& s, std::size_t n_param,
                                   std::size_t c, const IterationObserver& observer) {
  if (t.seq() != s.seq()) throw std::invalid_argument("weak construction needs equal leaf orderings");
  if (n_param < 1) throw std::invalid_argument("n_param must be positive");

  ConstructionOutcome out;
  out.t_rooted = t;
  out.s_rooted = s;
  IterationState state{t, s, {}, n_param};

  while (state.size() > 1) {
    normalize_orientation(state);
    if (observer) observer(state);
    const IterationStep step = classify_iteration(state, c);
    if (const auto* cat = std::get_if<CaterpillarStep>(&step)) {
      out.agreement_set = make_taxon_set(cat->leaves);
      out.kind = OutcomeKind::kUnrootedCaterpillar;
      out.branch = "greedy_caterpillar";
      out.claimed_bound = log2_of(n_param);
      return out;
    }
    const GoodPair& pair = std::holds_alternative<LargePairStep>(step)
                               ? std::get<LargePairStep>(step).pair
                               : std::get<RegularPairStep>(step).pair;
    advance(state, pair);
    ++out.pair_steps;
  }
  out.agreement_set = union_of(state.agreement, state.taxa());
  out.kind = OutcomeKind::kRootedCaterpillar;
  out.branch = "rooted_chain";
  out.claimed_bound = weak_rooted_bound(n_param);
  return out;
}

ConstructionOutcome weak_construct(const UnrootedTree& t, const UnrootedTree& s,
                                   const Orientation& orient, std::size_t c,
                                   const IterationObserver& observer) {
  const Setup su = setup(t, s, orient);
  ConstructionOutcome out = weak_construct(su.state.t, su.state.s, su.state.n_param, c, observer);
  out.t_rooted = su.t_rooted;
  out.s_rooted = su.s_rooted;
  return out;
}

namespace {

enum class Family { kQ, kR };

struct SubtreeRef {
  Family family;
  std::size_t index;
};

class Splitter {
 public:
  Splitter(const IterationState& state, const PathDecomposition& decomp, std::size_t c)
      : state_(state), decomp_(decomp), n_(state.size()), log_n_(log2_of(state.n_param)) {
    if (!power_reaches(n_, 4, state.n_param)) {
      throw std::invalid_argument("strong split needs |X|^4 >= n");
    }
    if (has_oversized_subtree(decomp, n_, c)) {
      throw std::invalid_argument("strong split needs every subtree to be at most 2|X|/C");
    }
    q_of_.assign(n_, 0);
    r_of_.assign(n_, 0);
    for (std::size_t i = 0; i < decomp.q.size(); ++i) {
      for (std::size_t p = decomp.q[i].interval.lo; p < decomp.q[i].interval.hi; ++p) q_of_[p] = i;
    }
    for (std::size_t i = 0; i < decomp.r.size(); ++i) {
      for (std::size_t p = decomp.r[i].interval.lo; p < decomp.r[i].interval.hi; ++p) r_of_[p] = i;
    }
  }

  SplitResult run() {
    // Middle band of 1-based positions P with 8n' <= 20P <= 12n'.
    auto in_band = [&](const LeafInterval& iv) {
      return iv.size() > 0 && 20 * (iv.lo + 1) >= 8 * n_ && 20 * iv.hi <= 12 * n_;
    };
    std::optional<std::size_t> first, last;
    for (std::size_t p = 0; p < n_; ++p) {
      if (in_band(subtree({Family::kQ, q_of_[p]}).interval) &&
          in_band(subtree({Family::kR, r_of_[p]}).interval)) {
        if (!first) first = p;
        last = p;
      }
    }

    std::vector<SubtreeRef> y_candidates;
    if (first) {
      for (std::size_t i = q_of_[*first]; i <= q_of_[*last]; ++i) {
        if (big(decomp_.q[i], 10.0)) y_candidates.push_back({Family::kQ, i});
      }
      for (std::size_t i = r_of_[*first]; i <= r_of_[*last]; ++i) {
        if (big(decomp_.r[i], 10.0)) y_candidates.push_back({Family::kR, i});
      }
    }

    for (const SubtreeRef& y : y_candidates) {
      if (auto split = try_y(y)) return *split;
    }
    if (failure_) return *failure_;
    const std::size_t band_lo = first ? *first : 0;
    const std::size_t band_hi = first ? *last + 1 : n_;
    return greedy_fallback(band_lo, band_hi);
  }

 private:
  const PathSubtree& subtree(SubtreeRef ref) const {
    return ref.family == Family::kQ ? decomp_.q[ref.index] : decomp_.r[ref.index];
  }
  const std::vector<PathSubtree>& family(Family f) const {
    return f == Family::kQ ? decomp_.q : decomp_.r;
  }
  std::size_t index_at(Family f, std::size_t pos) const {
    return f == Family::kQ ? q_of_[pos] : r_of_[pos];
  }
  static Family other(Family f) { return f == Family::kQ ? Family::kR : Family::kQ; }

  bool big(const PathSubtree& st, double factor) const {
    return at_least_fraction(st.size(), n_, factor * log_n_);
  }

  std::optional<IncomparableSplit> try_y(SubtreeRef y) {
    // X comes from the first quarter for a q-side Y, the last quarter otherwise.
    auto in_window = [&](const LeafInterval& iv) {
      if (y.family == Family::kQ) return 20 * iv.hi < 5 * n_;
      return 20 * (iv.lo + 1) >= 15 * n_;
    };
    for (Family f : {y.family, other(y.family)}) {
      const auto& list = family(f);
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (!in_window(list[i].interval) || !big(list[i], 5.0)) continue;
        if (auto split = try_block({f, i}, y)) return split;
      }
    }
    if (!failure_) {
      const std::size_t lo = y.family == Family::kQ ? 0 : (15 * n_ + 19) / 20 - 1;
      const std::size_t hi = y.family == Family::kQ ? (5 * n_ + 19) / 20 - 1 : n_;
      failure_ = greedy_fallback(lo, hi);
    }
    return std::nullopt;
  }

  std::optional<IncomparableSplit> try_block(SubtreeRef block, SubtreeRef y) {
    const LeafInterval b = subtree(block).interval;
    const Family pf = other(block.family);
    const std::size_t need = integer_root_ceil(state_.n_param, 16);
    std::vector<std::size_t> transversal;
    for (std::size_t i = index_at(pf, b.lo); i <= index_at(pf, b.hi - 1); ++i) {
      const LeafInterval common = intersect(b, family(pf)[i].interval);
      transversal.push_back(common.lo);
      if (common.size() >= need) return checked_split(common, subtree(y).interval);
    }
    if (!failure_) failure_ = transversal_fallback(transversal);
    return std::nullopt;
  }

  IncomparableSplit checked_split(const LeafInterval& x, const LeafInterval& y) const {
    if (intersect(x, y).size() != 0) throw std::logic_error("strong split: X and Y overlap");
    IncomparableSplit split{taxa_in(state_.t, x), taxa_in(state_.t, y)};
    if (!at_least_fraction(split.y.size(), n_, 10.0 * log_n_)) {
      throw std::logic_error("strong split: Y below its size floor");
    }
    for (const RootedTree* tree : {&state_.t, &state_.s}) {
      if (is_comparable(*tree, lca(*tree, split.x), lca(*tree, split.y))) {
        throw std::logic_error("strong split: lca(X) and lca(Y) are comparable");
      }
    }
    return split;
  }

  SplitFallback greedy_fallback(std::size_t lo, std::size_t hi) const {
    auto picked = greedy_sweep(decomp_, n_, lo, hi);
    const auto full = greedy_sweep(decomp_, n_);
    if (full.size() > picked.size()) picked = full;
    std::vector<Taxon> taxa;
    for (std::size_t p : picked) taxa.push_back(state_.t.seq()[p]);
    return {make_taxon_set(std::move(taxa)), OutcomeKind::kUnrootedCaterpillar,
            "split_greedy_caterpillar", log_n_};
  }

  // One leaf from each subtree crossing the block spans a caterpillar in the
  // partner's tree; its exact rooted MAST against the other tree is a
  // rooted caterpillar.
  SplitFallback transversal_fallback(const std::vector<std::size_t>& positions) const {
    std::vector<Taxon> taxa;
    for (std::size_t p : positions) taxa.push_back(state_.t.seq()[p]);
    const TaxonSet z = make_taxon_set(std::move(taxa));
    const RootedMastResult m = rooted_mast(restrict(state_.t, z), restrict(state_.s, z));
    return {m.agreement_set, OutcomeKind::kRootedCaterpillar, "split_transversal_exact",
            log_n_ / 48.0};
  }

  const IterationState& state_;
  const PathDecomposition& decomp_;
  std::size_t n_;
  double log_n_;
  std::vector<std::size_t> q_of_, r_of_;
  std::optional<SplitFallback> failure_;
};

}  // namespace

SplitResult strong_split(const IterationState& state, const PathDecomposition& decomp,
                         std::size_t c) {
  return Splitter(state, decomp, c).run();
}

SplitResult strong_split(IterationState& state, std::size_t c) {
  const PathDecomposition decomp = path_decomposition(state);
  return strong_split(state, decomp, c);
}

ConstructionOutcome main_construct(const UnrootedTree& t, const UnrootedTree& s,
                                   const Orientation& orient, std::size_t c,
                                   const IterationObserver& observer) {
  return main_construct(setup(t, s, orient), c, observer);
}

ConstructionOutcome main_construct(Setup su, std::size_t c, const IterationObserver& observer) {
  check_state(su.state);
  IterationState& state = su.state;
  const std::size_t n = state.n_param;

  ConstructionOutcome out;
  out.t_rooted = su.t_rooted;
  out.s_rooted = su.s_rooted;
  std::optional<SplitFallback> exit;

  while (power_reaches(state.size(), 4, n)) {
    normalize_orientation(state);
    if (observer) observer(state);
    const PathDecomposition decomp = decompose(state);
    if (auto pair = find_good_pair_structural(state, decomp, c)) {
      advance(state, *pair);
      ++out.pair_steps;
      continue;
    }
    SplitResult split = strong_split(state, decomp, c);
    if (auto* fb = std::get_if<SplitFallback>(&split)) {
      exit = std::move(*fb);
      break;
    }
    const auto& xy = std::get<IncomparableSplit>(split);
    const ConstructionOutcome block = weak_construct(
        restrict(state.t, xy.x), restrict(state.s, xy.x), xy.x.size() * xy.x.size());
    if (block.kind == OutcomeKind::kUnrootedCaterpillar) {
      exit = SplitFallback{block.agreement_set, block.kind, "block_weak_caterpillar",
                           log2_of(n) / 16.0};
      break;
    }
    advance_block(state, block.agreement_set, xy.y);
    ++out.block_steps;
  }

  auto tail = [&] { return union_of(state.agreement, rooted_mast(state.t, state.s).agreement_set); };

  if (!exit) {
    out.agreement_set = tail();
    out.kind = OutcomeKind::kBlockTree;
    out.branch = "block_chain";
    out.claimed_bound = log2_of(n) / (4.0 * std::log2(static_cast<double>(c)));
    return out;
  }

  out.agreement_set = exit->agreement;
  out.kind = exit->kind;
  out.branch = exit->branch;
  out.claimed_bound = exit->claimed_bound;
  if (static_cast<double>(out.size()) < std::ceil(exit->claimed_bound)) {
    out.desk_fallback = true;
    out.branch += "+desk_fallback_exact";
  }
  // The exit set drops M; keep the chain instead when it is larger.
  TaxonSet chain = tail();
  if (chain.size() > out.size()) {
    if (!out.desk_fallback) out.branch += "+chain_exact";
    out.agreement_set = std::move(chain);
    out.kind = OutcomeKind::kBlockTree;
  }
  return out;
}

bool verify_agreement(const RootedTree& t, const RootedTree& s, const TaxonSet& a,
                      OutcomeKind kind) {
  for (const auto& x : a) {
    if (!t.has_taxon(x) || !s.has_taxon(x)) throw TreeError("unknown taxon in agreement set: " + x);
  }
  if (a.size() <= 2) return true;
  const RootedTree rt = restrict(t, a);
  const RootedTree rs = restrict(s, a);
  if (is_rooted_kind(kind)) return isomorphic(rt, rs);
  return isomorphic(deroot(rt), deroot(rs));
}

bool verify_agreement(const UnrootedTree& t, const UnrootedTree& s, const TaxonSet& a) {
  for (const auto& x : a) {
    if (!t.find_leaf(x) || !s.find_leaf(x)) throw TreeError("unknown taxon in agreement set: " + x);
  }
  if (a.size() <= 3) return true;
  return isomorphic(restrict(t, a), restrict(s, a));
}

bool verify_outcome(const ConstructionOutcome& outcome) {
  return verify_agreement(outcome.t_rooted, outcome.s_rooted, outcome.agreement_set, outcome.kind);
}

}  // namespace mastkit
