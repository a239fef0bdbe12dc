#include <doctest.h>

#include <map>
#include <set>

#include "thompson/sampling.hpp"

using namespace thompson;

TEST_CASE("uniform_below stays in range and is reproducible") {
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    auto x = uniform_below(a, 7);
    CHECK(x < 7);
    CHECK(x == uniform_below(b, 7));
  }
  CHECK_THROWS(uniform_below(a, 0));
}

TEST_CASE("tree counts are Catalan numbers") {
  const std::size_t catalan[] = {1, 1, 2, 5, 14, 42, 132};
  for (std::size_t n = 1; n <= 7; ++n) {
    auto trees = all_trees(n);
    CHECK(trees.size() == catalan[n - 1]);
    std::set<std::vector<Word>> distinct;
    for (const auto& t : trees) distinct.insert(t.leaves());
    CHECK(distinct.size() == trees.size());
  }
}

TEST_CASE("random trees are roughly uniform") {
  Rng rng(1);
  std::map<std::vector<Word>, int> counts;
  const int draws = 14000;
  for (int i = 0; i < draws; ++i) counts[random_tree(5, rng).leaves()]++;
  CHECK(counts.size() == 14);
  for (const auto& [leaves, c] : counts) {
    CHECK(c > 800);
    CHECK(c < 1200);
  }
  CHECK_THROWS(random_tree(0, rng));
}

TEST_CASE("random elements respect their group and bounds") {
  Rng rng(2);
  for (int i = 0; i < 600; ++i) {
    GroupClass g = i % 3 == 0 ? GroupClass::F : i % 3 == 1 ? GroupClass::T : GroupClass::V;
    TreeDiagram d = random_element(g, 9, rng);
    CHECK(d.is_reduced());
    CHECK(d.leaf_count() <= 9);
    if (g == GroupClass::F) CHECK(d.group_class() == GroupClass::F);
    if (g == GroupClass::T) CHECK(d.group_class() != GroupClass::V);
    CHECK_FALSE(is_identity(random_nontrivial(g, 4, rng)));
  }
}

TEST_CASE("enumeration of reduced elements") {
  auto t = enumerate_reduced(GroupClass::T, 6);
  CHECK(t.size() == 6);
  CHECK(t == enumerate_reduced(GroupClass::T, 6));
  CHECK(t.front() == TreeDiagram({{Word("0"), Word("1")}, {Word("1"), Word("0")}}));
  std::set<std::string> seen;
  for (const auto& d : t) {
    CHECK(d.is_reduced());
    CHECK_FALSE(is_identity(d));
    CHECK(d.group_class() != GroupClass::V);
    seen.insert(d.to_text());
  }
  CHECK(seen.size() == t.size());
  auto f = enumerate_reduced(GroupClass::F, 3);
  for (const auto& d : f) CHECK(d.group_class() == GroupClass::F);
  CHECK(f.front() == invert(x0()));
  auto v = enumerate_reduced(GroupClass::V, 10);
  std::size_t v_only = 0;
  for (const auto& d : v) v_only += d.group_class() == GroupClass::V;
  CHECK(v_only > 0);
}
