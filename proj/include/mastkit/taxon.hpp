#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mastkit {

// A leaf label. Labels are compared in "natural" order so that decimal labels
// sort numerically ("2" < "10"); non-numeric labels sort lexicographically
// after all numeric ones.
using Taxon = std::string;

bool taxon_less(std::string_view a, std::string_view b);

struct TaxonLess {
  bool operator()(std::string_view a, std::string_view b) const { return taxon_less(a, b); }
};

// Sorted (natural order), duplicate-free list of taxa.
using TaxonSet = std::vector<Taxon>;

TaxonSet make_taxon_set(std::vector<Taxon> taxa);

bool contains(const TaxonSet& set, std::string_view taxon);

// Comma separated, natural order. Used by reports and error messages.
std::string join_taxa(const std::vector<Taxon>& taxa, std::string_view sep = ",");

}  // namespace mastkit
