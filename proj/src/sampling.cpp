#include "thompson/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace thompson {

namespace {

std::uint64_t catalan(std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

// Number of full binary trees with n leaves.
std::uint64_t tree_count(std::size_t leaves) { return catalan(leaves - 1); }

void random_subtree(std::size_t leaves, const Word& at, Rng& rng, std::vector<Word>& out) {
  if (leaves == 1) {
    out.push_back(at);
    return;
  }
  std::uint64_t pick = uniform_below(rng, tree_count(leaves));
  std::size_t left = 1;
  for (; left < leaves; ++left) {
    std::uint64_t ways = tree_count(left) * tree_count(leaves - left);
    if (pick < ways) break;
    pick -= ways;
  }
  random_subtree(left, at.child('0'), rng, out);
  random_subtree(leaves - left, at.child('1'), rng, out);
}

std::vector<std::vector<Word>> shapes_below(std::size_t leaves, const Word& at) {
  if (leaves == 1) return {{at}};
  std::vector<std::vector<Word>> out;
  for (std::size_t left = 1; left < leaves; ++left) {
    auto ls = shapes_below(left, at.child('0'));
    auto rs = shapes_below(leaves - left, at.child('1'));
    for (const auto& l : ls)
      for (const auto& r : rs) {
        std::vector<Word> w = l;
        w.insert(w.end(), r.begin(), r.end());
        out.push_back(std::move(w));
      }
  }
  return out;
}

bool belongs_to(GroupClass element, GroupClass group) {
  switch (group) {
    case GroupClass::F: return element == GroupClass::F;
    case GroupClass::T: return element != GroupClass::V;
    case GroupClass::V: return true;
  }
  return false;
}

}  // namespace

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

BinaryTree random_tree(std::size_t leaves, Rng& rng) {
  if (leaves == 0 || leaves > 30) throw std::invalid_argument("random_tree: leaf count out of range");
  std::vector<Word> out;
  random_subtree(leaves, Word(), rng, out);
  return BinaryTree(std::move(out));
}

TreeDiagram random_element(GroupClass group, std::size_t max_leaves, Rng& rng) {
  std::size_t n = 1 + uniform_below(rng, max_leaves);
  BinaryTree source = random_tree(n, rng);
  BinaryTree target = random_tree(n, rng);
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  if (group == GroupClass::T) {
    std::size_t shift = uniform_below(rng, n);
    for (std::size_t i = 0; i < n; ++i) sigma[i] = (i + shift) % n;
  } else if (group == GroupClass::V) {
    for (std::size_t i = n; i > 1; --i) std::swap(sigma[i - 1], sigma[uniform_below(rng, i)]);
  }
  return reduce(TreeDiagram(source, sigma, target));
}

TreeDiagram random_nontrivial(GroupClass group, std::size_t max_leaves, Rng& rng) {
  for (;;) {
    TreeDiagram d = random_element(group, max_leaves, rng);
    if (!is_identity(d)) return d;
  }
}

std::vector<BinaryTree> all_trees(std::size_t leaves) {
  std::vector<BinaryTree> out;
  for (auto& w : shapes_below(leaves, Word())) out.emplace_back(std::move(w));
  return out;
}

std::vector<TreeDiagram> enumerate_reduced(GroupClass group, std::size_t count) {
  std::vector<TreeDiagram> out;
  for (std::size_t n = 2; out.size() < count; ++n) {
    auto trees = all_trees(n);
    for (const BinaryTree& s : trees)
      for (const BinaryTree& t : trees) {
        std::vector<std::size_t> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
          TreeDiagram d(s, sigma, t);
          if (belongs_to(d.group_class(), group) && d.is_reduced() && !is_identity(d)) {
            out.push_back(std::move(d));
            if (out.size() == count) return out;
          }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
      }
  }
  return out;
}

}  // namespace thompson
