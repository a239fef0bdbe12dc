#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "thompson/diagram.hpp"

using namespace thompson;

namespace {

Dyadic d(long num, unsigned e) { return Dyadic(mpz_class(num), e); }

TreeDiagram table(std::initializer_list<std::pair<const char*, const char*>> rows) {
  std::vector<BranchPair> pairs;
  for (auto [u, v] : rows) pairs.push_back({Word::parse(u), Word::parse(v)});
  return TreeDiagram(std::move(pairs));
}

TreeDiagram x0x1_table() { return table({{"00", "0"}, {"010", "10"}, {"011", "110"}, {"1", "111"}}); }

GroupClass random_group(Rng& rng) {
  static const GroupClass classes[] = {GroupClass::F, GroupClass::T, GroupClass::V};
  return classes[uniform_below(rng, 3)];
}

// Reduction by removing a randomly chosen removable caret until none remains.
TreeDiagram reduce_randomly(TreeDiagram t, Rng& rng) {
  for (;;) {
    const auto& pairs = t.pairs();
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
      const Word &u0 = pairs[i].from, &u1 = pairs[i + 1].from;
      const Word &v0 = pairs[i].to, &v1 = pairs[i + 1].to;
      if (u0.size() && u0.size() == u1.size() && u0.bits().back() == '0' && u1.bits().back() == '1' &&
          u0.prefix(u0.size() - 1) == u1.prefix(u1.size() - 1) && v0.size() && v0.size() == v1.size() &&
          v0.bits().back() == '0' && v1.bits().back() == '1' && v0.prefix(v0.size() - 1) == v1.prefix(v1.size() - 1))
        candidates.push_back(i);
    }
    if (candidates.empty()) return t;
    std::size_t i = candidates[uniform_below(rng, candidates.size())];
    std::vector<BranchPair> next;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (j == i) {
        next.push_back({pairs[j].from.prefix(pairs[j].from.size() - 1), pairs[j].to.prefix(pairs[j].to.size() - 1)});
        ++j;
      } else {
        next.push_back(pairs[j]);
      }
    }
    t = TreeDiagram(std::move(next));
  }
}

}  // namespace

TEST_CASE("built-in generators") {
  CHECK(x0() == table({{"00", "0"}, {"01", "10"}, {"1", "11"}}));
  CHECK(x1() == table({{"0", "0"}, {"100", "10"}, {"101", "110"}, {"11", "111"}}));
  CHECK(x0().group_class() == GroupClass::F);
  CHECK(x0().is_reduced());
  CHECK(identity().leaf_count() == 1);
}

TEST_CASE("built-ins reproduce their piecewise-linear formulas") {
  Rng rng(17);
  for (int i = 0; i < 2000; ++i) {
    Dyadic x = oracle::random_point(rng, 16);
    CHECK(oracle::q(evaluate(x0(), x)) == oracle::x0_formula(oracle::q(x)));
    CHECK(oracle::q(evaluate(x1(), x)) == oracle::x1_formula(oracle::q(x)));
  }
}

TEST_CASE("parse and print") {
  auto t = TreeDiagram::parse("class: F\n# x0\n00 -> 0\n01 -> 10\n1 -> 11\n");
  CHECK(t == x0());
  CHECK(TreeDiagram::parse(t.to_text()) == t);
  CHECK(t.to_text() == "00 -> 0\n01 -> 10\n1 -> 11\n");
  CHECK(TreeDiagram::parse("e -> e\n") == identity());
  CHECK(TreeDiagram::parse("0 -> 1\n1 -> 0\n").group_class() == GroupClass::T);
  CHECK(TreeDiagram::parse("0 -> 0\n10 -> 11\n11 -> 10\n").group_class() == GroupClass::V);

  auto error_at = [](const char* text) -> std::string {
    try {
      TreeDiagram::parse(text);
    } catch (const ParseError& e) {
      return e.what();
    }
    return "no error";
  };
  CHECK(error_at("class: F\n0 -> 1\n1 -> 0\n").find("line 1") != std::string::npos);
  CHECK(error_at("00 -> 0\n01 -> 1x\n1 -> 11\n").find("line 2, column") != std::string::npos);
  CHECK(error_at("00 -> 0\n01 => 10\n1 -> 11\n").find("line 2, column") != std::string::npos);
  CHECK(error_at("1 -> 11\n00 -> 0\n01 -> 10\n").find("line 2") != std::string::npos);
  CHECK(error_at("00 -> 0\n01 -> 10\n") != "no error");
  CHECK(TreeDiagram::parse("class: T\n00 -> 0\n01 -> 10\n1 -> 11\n") == x0());
  CHECK(error_at("00 -> 0\n1 -> 1\n") != "no error");
  CHECK(error_at("") != "no error");
}

TEST_CASE("tree diagram triples") {
  BinaryTree s({Word("0"), Word("10"), Word("11")});
  BinaryTree t({Word("00"), Word("01"), Word("1")});
  TreeDiagram g(s, {0, 1, 2}, t);
  CHECK(g == invert(x0()));
  TreeDiagram r(s, {1, 2, 0}, t);
  CHECK(r.group_class() == GroupClass::T);
  CHECK(r.permutation() == std::vector<std::size_t>{1, 2, 0});
  CHECK(TreeDiagram(s, {1, 0, 2}, t).group_class() == GroupClass::V);
  CHECK(r.source_tree() == s);
  CHECK(r.target_tree() == t);
  CHECK_THROWS(BinaryTree({Word("0"), Word("10")}));
}

TEST_CASE("reduce and expand") {
  CHECK(reduce(expand(x0(), 1)) == x0());
  CHECK(reduce(identity()) == identity());
  CHECK(expand(identity(), 1) == table({{"0", "0"}, {"1", "1"}}));
  CHECK(expand(x0(), 3) == table({{"00", "0"}, {"01", "10"}, {"10", "110"}, {"11", "111"}}));
  CHECK_THROWS_AS(expand(x0(), 0), std::out_of_range);
  CHECK_THROWS_AS(expand(x0(), 4), std::out_of_range);
  // In V the caret goes to the partner leaf sigma(i).
  TreeDiagram swap = table({{"0", "1"}, {"1", "0"}});
  CHECK(expand(swap, 1) == table({{"00", "10"}, {"01", "11"}, {"1", "0"}}));

  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    TreeDiagram g = random_element(random_group(rng), 8, rng);
    TreeDiagram e = g;
    for (int k = 0; k < 5; ++k) e = expand(e, 1 + uniform_below(rng, e.leaf_count()));
    for (int k = 0; k < 20; ++k) {
      Dyadic x = oracle::random_point(rng, 12);
      CHECK(oracle::evaluate(e, oracle::q(x)) == oracle::evaluate(g, oracle::q(x)));
    }
    CHECK(reduce(e) == g);
    CHECK(reduce(reduce(e)) == reduce(e));
    CHECK(reduce_randomly(e, rng) == g);
  }
}

TEST_CASE("products, inverses and conjugates") {
  CHECK(multiply(x0(), x1()) == x0x1_table());
  CHECK(multiply(x0(), x0()) == table({{"000", "0"}, {"001", "10"}, {"01", "110"}, {"1", "111"}}));
  CHECK(invert(x0()) == table({{"0", "00"}, {"10", "01"}, {"11", "1"}}));
  CHECK(power(x0(), 0) == identity());
  CHECK(power(x0(), -1) == invert(x0()));
  CHECK(conjugate(x1(), identity()) == x1());
  CHECK(equal(multiply(x0(), invert(x0())), identity()));
  // Products are left to right: check against composing the formulas.
  Rng rng(29);
  for (int i = 0; i < 500; ++i) {
    Dyadic x = oracle::random_point(rng, 14);
    mpq_class xq = oracle::q(x);
    CHECK(oracle::evaluate(x0x1_table(), xq) == oracle::x1_formula(oracle::x0_formula(xq)));
    CHECK(oracle::q(evaluate(multiply(x0(), x0()), x)) == oracle::x0_formula(oracle::x0_formula(xq)));
  }
}

TEST_CASE("group axioms on random diagrams") {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    GroupClass g = random_group(rng);
    TreeDiagram a = random_element(g, 12, rng), b = random_element(g, 12, rng), c = random_element(g, 12, rng);
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    CHECK(is_identity(multiply(a, invert(a))));
    CHECK(is_identity(multiply(invert(a), a)));
    CHECK(invert(invert(a)) == a);
    CHECK(multiply(a, identity()) == a);
    CHECK(multiply(identity(), a) == a);
    CHECK(power(a, 3) == multiply(a, multiply(a, a)));
    CHECK(power(a, -2) == invert(multiply(a, a)));
    CHECK(conjugate(a, b) == multiply(multiply(invert(b), a), b));
    TreeDiagram ab = multiply(a, b);
    CHECK(ab.is_reduced());
    if (g == GroupClass::F) CHECK(ab.group_class() == GroupClass::F);
    if (g == GroupClass::T) CHECK(ab.group_class() != GroupClass::V);
  }
}

TEST_CASE("evaluation agrees with prefix replacement") {
  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    TreeDiagram a = random_element(random_group(rng), 12, rng), b = random_element(random_group(rng), 12, rng);
    TreeDiagram ab = multiply(a, b);
    for (int i = 0; i < 100; ++i) {
      Dyadic x = i == 0 ? Dyadic(0) : oracle::random_point(rng, 14);
      mpq_class xq = oracle::q(x);
      CHECK(oracle::q(evaluate(a, x)) == oracle::evaluate(a, xq));
      CHECK(oracle::q(evaluate(ab, x)) == oracle::evaluate(b, oracle::evaluate(a, xq)));
    }
  }
}

TEST_CASE("evaluation examples") {
  CHECK(evaluate(x0(), d(3, 3)) == d(5, 3));
  CHECK(evaluate(identity(), d(7, 5)) == d(7, 5));
  CHECK(evaluate(x0x1_table(), d(9, 4)) == d(57, 6));
  CHECK(evaluate(x1(), evaluate(x0(), d(9, 4))) == d(57, 6));
  CHECK(evaluate(x0(), Dyadic(0)) == Dyadic(0));
  // Left continuity at a branch endpoint of a V element.
  TreeDiagram swap = table({{"0", "1"}, {"1", "0"}});
  CHECK(evaluate(swap, d(1, 1)) == Dyadic(0));
  CHECK(evaluate(swap, Dyadic(0)) == d(1, 1));
}

TEST_CASE("interval images") {
  CHECK(map_interval(x0(), DyadicInterval::word(Word("00"), false)) == RegionSet(DyadicInterval::word(Word("0"), false)));
  auto i = DyadicInterval::half_open(d(1, 3), d(5, 4));
  CHECK(map_interval(identity(), i) == RegionSet(i));
  CHECK(map_interval(x0(), DyadicInterval::half_open(Dyadic(0), d(1, 1))) ==
        RegionSet(DyadicInterval::half_open(Dyadic(0), d(3, 2))));

  // Exact membership: y is in the image iff its preimage is in the interval.
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    TreeDiagram g = random_element(random_group(rng), 8, rng), inv = invert(g);
    Dyadic a = oracle::random_point(rng, 6), b;
    do b = oracle::random_point(rng, 6);
    while (b == a);
    auto interval = uniform_below(rng, 2) ? DyadicInterval::half_open(a, b) : DyadicInterval::open(a, b);
    RegionSet source(interval), image = map_interval(g, interval);
    for (long k = 0; k < 512; ++k) {
      Dyadic y(mpz_class(k), 9);
      bool in_source = source.contains(oracle::to_dyadic(oracle::evaluate(inv, oracle::q(y))));
      CHECK(image.contains(y) == in_source);
    }
  }
}

TEST_CASE("slopes") {
  CHECK(slopes_at(x1(), d(1, 1)) == Slopes{0, 1, true});
  CHECK(slopes_at(identity(), d(3, 3)) == Slopes{0, 0, true});
  CHECK(slopes_at(x0(), d(1, 2)) == Slopes{1, 0, true});
  CHECK_THROWS_AS(slopes_at(x0(), Dyadic(0)), std::invalid_argument);
  Slopes s = slopes_at(table({{"0", "0"}, {"10", "11"}, {"11", "10"}}), d(3, 2));
  CHECK_FALSE(s.continuous);
}

TEST_CASE("pairs of branches") {
  CHECK(has_pair_of_branches(x0(), Word("00"), Word("0")));
  CHECK_FALSE(has_pair_of_branches(x0(), Word("0"), Word("0")));
  CHECK(has_pair_of_branches(power(x0x1_table(), 2), Word("010"), Word("1110")));
  // A pair assembled from several branches.
  CHECK(has_pair_of_branches(x1(), Word("1"), Word("1")) == false);
  CHECK(has_pair_of_branches(expand(expand(x0(), 1), 1), Word("00"), Word("0")));

  Rng rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    std::string bits;
    for (std::size_t j = 0, n = uniform_below(rng, 8); j < n; ++j) bits += uniform_below(rng, 2) ? '1' : '0';
    CHECK(has_pair_of_branches(identity(), Word(bits), Word(bits)));
    TreeDiagram g = random_element(random_group(rng), 10, rng);
    const BranchPair& p = g.pairs()[uniform_below(rng, g.leaf_count())];
    CHECK(has_pair_of_branches(g, p.from, p.to));
    Word w(bits);
    CHECK(has_pair_of_branches(g, p.from + w, p.to + w));
    // Semantic check of the claimed affine map on [u].
    for (int i = 0; i < 10; ++i) {
      Dyadic t = oracle::random_point(rng, 10);
      mpq_class x = oracle::q((p.from + w).left()) + oracle::q(t) * oracle::q(1, static_cast<long>((p.from + w).size()));
      if (t == Dyadic(0)) continue;
      mpq_class y = oracle::q((p.to + w).left()) + oracle::q(t) * oracle::q(1, static_cast<long>((p.to + w).size()));
      if (y >= 1) y -= 1;
      CHECK(oracle::evaluate(g, x) == y);
    }
  }
}

TEST_CASE("fixed points and equality") {
  auto fx1 = fixed_dyadic_points(x1());
  CHECK(std::find(fx1.begin(), fx1.end(), d(1, 1)) != fx1.end());
  CHECK(std::find(fx1.begin(), fx1.end(), Dyadic(0)) != fx1.end());
  CHECK(std::find(fx1.begin(), fx1.end(), Dyadic(1)) != fx1.end());
  for (const Dyadic& p : fixed_dyadic_points(x0())) CHECK((p == Dyadic(0) || p == Dyadic(1)));
  CHECK(equal(expand(x1(), 2), x1()));
  CHECK_FALSE(equal(x0(), x1()));

  // Sound: every reported point is fixed. Complete on a grid: a fixed grid
  // point that is not interior to a fixed interval is reported.
  Rng rng(47);
  const mpq_class delta = oracle::q(1, 20);
  for (int trial = 0; trial < 100; ++trial) {
    TreeDiagram g = random_element(GroupClass::F, 10, rng);
    auto fixed = fixed_dyadic_points(g);
    for (const Dyadic& p : fixed) {
      mpq_class pq = oracle::q(p);
      CHECK(oracle::evaluate(g, pq == 1 ? mpq_class(0) : pq) == (pq == 1 ? 0 : pq));
    }
    for (long k = 1; k < 1024; ++k) {
      mpq_class p = oracle::q(k, 10);
      if (oracle::evaluate(g, p) != p) continue;
      bool interior = oracle::evaluate(g, p - delta) == p - delta && oracle::evaluate(g, p + delta) == p + delta;
      bool listed = std::find(fixed.begin(), fixed.end(), oracle::to_dyadic(p)) != fixed.end();
      CHECK(listed == !interior);
    }
  }
}
