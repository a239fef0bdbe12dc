// Tree-diagrams for elements of Thompson's groups F <= T <= V.
//
// An element is stored as its list of branch pairs u_i -> v_sigma(i), sorted by
// the source words (left-to-right leaf order of T+). The target words of all
// pairs form the leaf set of T-, and sigma is read off from their ranks.
//
// Composition is LEFT TO RIGHT: multiply(a, b) applies a first, then b.
// Conjugation follows the same convention: conjugate(a, g) = g^-1 a g.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/dyadic.hpp"
#include "thompson/interval.hpp"

namespace thompson {

/// True iff the words are the leaves of a full binary tree (checked on a trie).
bool is_complete_prefix_code(const std::vector<Word>& words);
/// Sum of 2^-|w|.
Dyadic kraft_sum(const std::vector<Word>& words);

/// A rooted full binary tree, held as its leaf labels in left-to-right order.
class BinaryTree {
 public:
  BinaryTree() : leaves_{Word()} {}
  /// Throws std::invalid_argument unless the leaves form a complete prefix code.
  explicit BinaryTree(std::vector<Word> leaves);

  const std::vector<Word>& leaves() const { return leaves_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  std::size_t caret_count() const { return leaves_.size() - 1; }

  bool operator==(const BinaryTree&) const = default;

 private:
  std::vector<Word> leaves_;
};

struct BranchPair {
  Word from;
  Word to;
  bool operator==(const BranchPair&) const = default;
};

enum class GroupClass { F, T, V };
const char* to_string(GroupClass c);

class TreeDiagram {
 public:
  /// The identity, as the one-leaf diagram e -> e.
  TreeDiagram() : pairs_{{Word(), Word()}} {}
  /// From branch pairs in any order; throws std::invalid_argument unless both
  /// columns are complete prefix codes. The result is NOT reduced.
  explicit TreeDiagram(std::vector<BranchPair> pairs);
  /// From (T+, sigma, T-); sigma[i] is the 0-based target leaf of source leaf i.
  TreeDiagram(const BinaryTree& source, const std::vector<std::size_t>& sigma,
              const BinaryTree& target);

  const std::vector<BranchPair>& pairs() const { return pairs_; }
  std::size_t leaf_count() const { return pairs_.size(); }

  BinaryTree source_tree() const;
  BinaryTree target_tree() const;
  /// sigma as a 0-based permutation: source leaf i goes to target leaf sigma[i].
  std::vector<std::size_t> permutation() const;
  GroupClass group_class() const;
  bool is_reduced() const;

  /// Structural equality of the stored pairs (use equal() for group equality).
  bool operator==(const TreeDiagram&) const = default;

  /// One "u -> v" line per pair in source order.
  std::string to_text() const;
  /// Accepts an optional "class: F|T|V" header and '#' comments.
  static TreeDiagram parse(std::string_view text);

 private:
  std::vector<BranchPair> pairs_;
};

TreeDiagram identity();
/// x0 = {00 -> 0, 01 -> 10, 1 -> 11}.
TreeDiagram x0();
/// x1 = {0 -> 0, 100 -> 10, 101 -> 110, 11 -> 111}.
TreeDiagram x1();

TreeDiagram reduce(const TreeDiagram& d);
/// Attaches a caret to source leaf i (1-based) and to its partner target leaf.
TreeDiagram expand(const TreeDiagram& d, std::size_t i);
/// Apply d1, then d2. Result is reduced.
TreeDiagram multiply(const TreeDiagram& d1, const TreeDiagram& d2);
TreeDiagram invert(const TreeDiagram& d);
TreeDiagram power(const TreeDiagram& d, long k);
/// g^-1 a g.
TreeDiagram conjugate(const TreeDiagram& a, const TreeDiagram& g);

bool is_identity(const TreeDiagram& d);
bool equal(const TreeDiagram& a, const TreeDiagram& b);

/// Image of a circle point in [0,1) under left-continuous semantics.
Dyadic evaluate(const TreeDiagram& d, const Dyadic& x);

RegionSet map_region(const TreeDiagram& d, const RegionSet& r);
RegionSet map_interval(const TreeDiagram& d, const DyadicInterval& i);

struct Slopes {
  int left;   // base-2 exponent of the slope on (x - eps, x]
  int right;  // base-2 exponent of the slope on [x, x + eps)
  bool continuous = true;
  bool operator==(const Slopes&) const = default;
};
/// x must lie in (0, 1).
Slopes slopes_at(const TreeDiagram& d, const Dyadic& x);

/// True iff d maps [u] affinely onto [v].
bool has_pair_of_branches(const TreeDiagram& d, const Word& u, const Word& v);

/// Dyadic x in [0,1] with d(x) = x that are endpoints of maximal fixed
/// intervals or isolated fixed points. 0 and 1 are listed when fixed.
std::vector<Dyadic> fixed_dyadic_points(const TreeDiagram& d);

/// Sorted left endpoints of the source pieces where d is not locally the
/// same affine map on both sides (breakpoints of the reduced diagram).
std::vector<Dyadic> breakpoints(const TreeDiagram& d);

}  // namespace thompson
