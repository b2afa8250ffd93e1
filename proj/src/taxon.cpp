#include "mastkit/taxon.hpp"

#include <algorithm>
#include <cctype>

namespace mastkit {

namespace {

bool is_numeric(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string_view strip_zeros(std::string_view s) {
  const auto first = s.find_first_not_of('0');
  return first == std::string_view::npos ? s.substr(s.size() - 1) : s.substr(first);
}

}  // namespace

bool taxon_less(std::string_view a, std::string_view b) {
  const bool na = is_numeric(a);
  const bool nb = is_numeric(b);
  if (na && nb) {
    const auto sa = strip_zeros(a);
    const auto sb = strip_zeros(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
    return a < b;
  }
  if (na != nb) return na;
  return a < b;
}

TaxonSet make_taxon_set(std::vector<Taxon> taxa) {
  std::sort(taxa.begin(), taxa.end(), TaxonLess{});
  taxa.erase(std::unique(taxa.begin(), taxa.end()), taxa.end());
  return taxa;
}

bool contains(const TaxonSet& set, std::string_view taxon) {
  return std::binary_search(set.begin(), set.end(), taxon, TaxonLess{});
}

std::string join_taxa(const std::vector<Taxon>& taxa, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < taxa.size(); ++i) {
    if (i > 0) out += sep;
    out += taxa[i];
  }
  return out;
}

}  // namespace mastkit
