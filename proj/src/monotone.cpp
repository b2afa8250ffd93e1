#include "mastkit/monotone.hpp"

#include <algorithm>
#include <unordered_map>

#include "mastkit/rooted_tree.hpp"

namespace mastkit {

std::vector<std::size_t> longest_increasing_subsequence(const std::vector<long long>& values) {
  std::vector<std::size_t> tails;  // tails[k]: index ending the best run of length k+1
  std::vector<std::size_t> pred(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto it = std::lower_bound(tails.begin(), tails.end(), values[i],
                                     [&](std::size_t j, long long v) { return values[j] < v; });
    if (it != tails.begin()) pred[i] = *(it - 1);
    if (it == tails.end()) {
      tails.push_back(i);
    } else {
      *it = i;
    }
  }
  std::vector<std::size_t> out;
  if (tails.empty()) return out;
  for (std::size_t i = tails.back(); i != values.size(); i = pred[i]) out.push_back(i);
  std::reverse(out.begin(), out.end());
  return out;
}

MonotoneAlignment common_monotone_subsequence(const std::vector<Taxon>& a,
                                              const std::vector<Taxon>& b) {
  if (a.size() != b.size()) throw TaxonMismatchError("orderings differ in length");
  std::unordered_map<Taxon, long long> pos_in_b;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!pos_in_b.emplace(b[i], static_cast<long long>(i)).second) {
      throw TaxonMismatchError("ordering repeats taxon '" + b[i] + "'");
    }
  }
  std::vector<long long> pi;
  pi.reserve(a.size());
  for (const auto& t : a) {
    const auto it = pos_in_b.find(t);
    if (it == pos_in_b.end()) throw TaxonMismatchError("taxon '" + t + "' missing from ordering");
    pi.push_back(it->second);
  }
  if (make_taxon_set(a).size() != a.size()) throw TaxonMismatchError("ordering repeats a taxon");

  const auto inc = longest_increasing_subsequence(pi);
  std::vector<long long> negated(pi.size());
  std::transform(pi.begin(), pi.end(), negated.begin(), [](long long v) { return -v; });
  const auto dec = longest_increasing_subsequence(negated);

  MonotoneAlignment out;
  const bool use_inc = inc.size() >= dec.size();
  out.direction = use_inc ? Direction::kIncreasing : Direction::kDecreasing;
  for (std::size_t i : use_inc ? inc : dec) out.sequence.push_back(a[i]);
  return out;
}

}  // namespace mastkit
