// Deterministic sampling and enumeration of tree-diagrams.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "thompson/diagram.hpp"

namespace thompson {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound); platform independent (rejection sampling).
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniformly random full binary tree with the given number of leaves.
BinaryTree random_tree(std::size_t leaves, Rng& rng);

/// Random reduced element of the given group: leaf count uniform in
/// [1, max_leaves], both trees uniform, sigma uniform among the class's
/// admissible permutations (identity for F, rotations for T, all for V).
TreeDiagram random_element(GroupClass group, std::size_t max_leaves, Rng& rng);

/// As random_element, redrawing until the result is not the identity.
TreeDiagram random_nontrivial(GroupClass group, std::size_t max_leaves, Rng& rng);

/// All full binary trees with n leaves, ordered by left-subtree size and then
/// recursively; the order is deterministic.
std::vector<BinaryTree> all_trees(std::size_t leaves);

/// The first `count` non-identity reduced diagrams lying in `group`, ordered by
/// (leaf count, source shape, target shape, sigma in lexicographic order).
std::vector<TreeDiagram> enumerate_reduced(GroupClass group, std::size_t count);

}  // namespace thompson
