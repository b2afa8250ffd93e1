#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "mastkit/rooted_tree.hpp"
#include "mastkit/unrooted_tree.hpp"

namespace mastkit {

class NewickError : public std::runtime_error {
 public:
  NewickError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Topology-only Newick. Whitespace and [comments] are skipped, branch lengths
// and internal node labels are accepted and discarded, the trailing ';' is
// required. Rooted trees must be strictly binary. Unrooted trees must have a
// trifurcating top-level node unless they have at most three leaves.
//
// Syntax problems throw NewickError; degree or label violations throw
// TreeError.
RootedTree parse_rooted_newick(std::string_view text);
UnrootedTree parse_unrooted_newick(std::string_view text);

using AnyTree = std::variant<UnrootedTree, RootedTree>;
AnyTree parse_newick(std::string_view text, bool rooted);

// Rooted output preserves child order exactly. Unrooted output is canonical:
// trifurcation at the neighbor of the smallest leaf, children ordered by
// smallest taxon.
std::string write_newick(const RootedTree& tree);
std::string write_newick(const UnrootedTree& tree);

// The label as a Newick token, single-quoted when it contains metacharacters.
std::string newick_label(const Taxon& label);

}  // namespace mastkit
