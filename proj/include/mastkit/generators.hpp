#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "mastkit/unrooted_tree.hpp"

namespace mastkit {

enum class TreeModel { kUniform, kCaterpillar, kBalanced };

std::string to_string(TreeModel model);
// Throws std::invalid_argument for an unknown name.
TreeModel parse_tree_model(const std::string& name);

struct GenSpec {
  TreeModel model = TreeModel::kUniform;
  std::size_t n = 1;
  std::uint64_t seed = 0;
};

// Deterministic per (model, n, seed); labels are "1".."n".
//  - uniform: leaves inserted in seeded random order, each one attached to a
//    uniformly chosen edge of the current tree;
//  - caterpillar: spine order 1..n, cherries {1,2} and {n-1,n} at the ends;
//  - balanced: complete binary tree with in-order labels, de-rooted.
// Throws std::invalid_argument on n == 0 or a non power of two for balanced.
UnrootedTree generate(const GenSpec& spec);

// Unrooted caterpillar whose spine reads `order` (cherries at both ends).
UnrootedTree caterpillar_with_order(const std::vector<Taxon>& order);

// (balanced(n), caterpillar) on taxa 1..n. The caterpillar spine order is a
// seeded permutation, so distinct seeds give distinct adversarial instances.
// Needs n = 2^k with k >= 2.
std::pair<UnrootedTree, UnrootedTree> adversarial_pair(std::size_t n, std::uint64_t seed);

bool is_power_of_two(std::size_t n);

}  // namespace mastkit
