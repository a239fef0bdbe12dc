#include "thompson/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace thompson {

namespace {

const Dyadic kZero(0);
const Dyadic kOne(1);

// Trie walk over a sorted range sharing a prefix of length depth.
bool complete_below(const std::vector<Word>& w, std::size_t begin, std::size_t end, std::size_t depth) {
  if (begin == end) return false;
  if (w[begin].size() == depth) return end - begin == 1;
  std::size_t mid = begin;
  while (mid < end && w[mid][depth] == '0') ++mid;
  for (std::size_t i = begin; i < end; ++i)
    if (w[i].size() <= depth) return false;
  return complete_below(w, begin, mid, depth + 1) && complete_below(w, mid, end, depth + 1);
}

long slope_exponent(const BranchPair& p) {
  return static_cast<long>(p.from.size()) - static_cast<long>(p.to.size());
}

// Affine image of x under the piece u -> v.
Dyadic apply_pair(const BranchPair& p, const Dyadic& x) {
  return p.to.left() + (x - p.from.left()).scaled(slope_exponent(p));
}

// Index of the pair whose (u] contains the point p in (0,1].
std::size_t locate_left(const std::vector<BranchPair>& pairs, const Dyadic& p) {
  std::size_t lo = 0, hi = pairs.size();
  // Last index with .u < p.
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (pairs[mid].from.left() < p)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// Index of the pair whose [u) contains p in [0,1).
std::size_t locate_right(const std::vector<BranchPair>& pairs, const Dyadic& p) {
  std::size_t lo = 0, hi = pairs.size();
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (pairs[mid].from.left() <= p)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

bool siblings(const Word& a, const Word& b) {
  std::size_t n = a.size();
  return n > 0 && b.size() == n && a.bits().compare(0, n - 1, b.bits(), 0, n - 1) == 0 &&
         a[n - 1] == '0' && b[n - 1] == '1';
}

bool mergeable(const BranchPair& a, const BranchPair& b) {
  return siblings(a.from, b.from) && siblings(a.to, b.to);
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

bool is_complete_prefix_code(const std::vector<Word>& words) {
  std::vector<Word> sorted = words;
  std::sort(sorted.begin(), sorted.end());
  return complete_below(sorted, 0, sorted.size(), 0);
}

Dyadic kraft_sum(const std::vector<Word>& words) {
  Dyadic s;
  for (const Word& w : words) s += w.length();
  return s;
}

BinaryTree::BinaryTree(std::vector<Word> leaves) : leaves_(std::move(leaves)) {
  std::sort(leaves_.begin(), leaves_.end());
  if (!complete_below(leaves_, 0, leaves_.size(), 0))
    throw std::invalid_argument("tree leaves do not form a complete prefix code");
}

const char* to_string(GroupClass c) {
  switch (c) {
    case GroupClass::F: return "F";
    case GroupClass::T: return "T";
    case GroupClass::V: return "V";
  }
  return "?";
}

TreeDiagram::TreeDiagram(std::vector<BranchPair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end(),
            [](const BranchPair& a, const BranchPair& b) { return a.from < b.from; });
  std::vector<Word> from, to;
  from.reserve(pairs_.size());
  to.reserve(pairs_.size());
  for (const BranchPair& p : pairs_) {
    from.push_back(p.from);
    to.push_back(p.to);
  }
  if (!complete_below(from, 0, from.size(), 0))
    throw std::invalid_argument("source words do not form a complete prefix code");
  std::sort(to.begin(), to.end());
  if (!complete_below(to, 0, to.size(), 0))
    throw std::invalid_argument("target words do not form a complete prefix code");
}

TreeDiagram::TreeDiagram(const BinaryTree& source, const std::vector<std::size_t>& sigma,
                         const BinaryTree& target) {
  std::size_t n = source.leaf_count();
  if (target.leaf_count() != n || sigma.size() != n)
    throw std::invalid_argument("tree-diagram sizes disagree");
  std::vector<bool> seen(n, false);
  for (std::size_t s : sigma) {
    if (s >= n || seen[s]) throw std::invalid_argument("sigma is not a permutation");
    seen[s] = true;
  }
  pairs_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pairs_.push_back({source.leaves()[i], target.leaves()[sigma[i]]});
}

BinaryTree TreeDiagram::source_tree() const {
  std::vector<Word> w;
  for (const BranchPair& p : pairs_) w.push_back(p.from);
  return BinaryTree(std::move(w));
}

BinaryTree TreeDiagram::target_tree() const {
  std::vector<Word> w;
  for (const BranchPair& p : pairs_) w.push_back(p.to);
  return BinaryTree(std::move(w));
}

std::vector<std::size_t> TreeDiagram::permutation() const {
  std::size_t n = pairs_.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [this](std::size_t a, std::size_t b) { return pairs_[a].to < pairs_[b].to; });
  std::vector<std::size_t> sigma(n);
  for (std::size_t rank = 0; rank < n; ++rank) sigma[order[rank]] = rank;
  return sigma;
}

GroupClass TreeDiagram::group_class() const {
  std::vector<std::size_t> sigma = permutation();
  std::size_t n = sigma.size();
  bool identity = true, rotation = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma[i] != i) identity = false;
    if (sigma[i] != (sigma[0] + i) % n) rotation = false;
  }
  if (identity) return GroupClass::F;
  return rotation ? GroupClass::T : GroupClass::V;
}

bool TreeDiagram::is_reduced() const {
  for (std::size_t i = 0; i + 1 < pairs_.size(); ++i)
    if (mergeable(pairs_[i], pairs_[i + 1])) return false;
  return true;
}

std::string TreeDiagram::to_text() const {
  std::string s;
  for (const BranchPair& p : pairs_) s += p.from.to_string() + " -> " + p.to.to_string() + "\n";
  return s;
}

TreeDiagram TreeDiagram::parse(std::string_view text) {
  std::vector<BranchPair> pairs;
  std::optional<GroupClass> declared;
  int line_no = 0, declared_line = 0, declared_col = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string line(raw);
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    int col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    if (t.rfind("class:", 0) == 0) {
      if (declared || !pairs.empty()) throw ParseError("class header must come first", line_no, col);
      std::string c = trim(std::string_view(t).substr(6));
      if (c == "F") declared = GroupClass::F;
      else if (c == "T") declared = GroupClass::T;
      else if (c == "V") declared = GroupClass::V;
      else throw ParseError("unknown class '" + c + "'", line_no, col);
      declared_line = line_no;
      declared_col = col;
      continue;
    }
    auto arrow = t.find("->");
    if (arrow == std::string::npos) throw ParseError("expected 'u -> v'", line_no, col);
    std::string lhs = trim(std::string_view(t).substr(0, arrow));
    std::string rhs = trim(std::string_view(t).substr(arrow + 2));
    BranchPair p;
    try {
      p.from = Word::parse(lhs);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, col);
    }
    try {
      p.to = Word::parse(rhs);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, static_cast<int>(line.find("->")) + 3);
    }
    if (!pairs.empty() && !(pairs.back().from < p.from))
      throw ParseError("pairs must be listed in left-to-right order of sources", line_no, col);
    pairs.push_back(std::move(p));
  }
  if (pairs.empty()) throw ParseError("element table has no branch pairs");
  TreeDiagram d;
  try {
    d = TreeDiagram(std::move(pairs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  if (declared && d.group_class() > *declared)
    throw ParseError(std::string("declared class ") + to_string(*declared) + " but element is in class " +
                         to_string(d.group_class()),
                     declared_line, declared_col);
  return d;
}

TreeDiagram identity() { return TreeDiagram(); }

TreeDiagram x0() {
  return TreeDiagram({{Word("00"), Word("0")}, {Word("01"), Word("10")}, {Word("1"), Word("11")}});
}

TreeDiagram x1() {
  return TreeDiagram({{Word("0"), Word("0")},
                      {Word("100"), Word("10")},
                      {Word("101"), Word("110")},
                      {Word("11"), Word("111")}});
}

TreeDiagram reduce(const TreeDiagram& d) {
  std::vector<BranchPair> stack;
  stack.reserve(d.pairs().size());
  for (const BranchPair& p : d.pairs()) {
    stack.push_back(p);
    while (stack.size() >= 2 && mergeable(stack[stack.size() - 2], stack.back())) {
      BranchPair merged{stack.back().from.prefix(stack.back().from.size() - 1),
                        stack.back().to.prefix(stack.back().to.size() - 1)};
      stack.pop_back();
      stack.back() = std::move(merged);
    }
  }
  return TreeDiagram(std::move(stack));
}

TreeDiagram expand(const TreeDiagram& d, std::size_t i) {
  if (i < 1 || i > d.leaf_count())
    throw std::out_of_range("leaf index " + std::to_string(i) + " out of range 1.." +
                            std::to_string(d.leaf_count()));
  std::vector<BranchPair> pairs;
  pairs.reserve(d.leaf_count() + 1);
  for (std::size_t j = 0; j < d.leaf_count(); ++j) {
    const BranchPair& p = d.pairs()[j];
    if (j + 1 == i) {
      pairs.push_back({p.from.child('0'), p.to.child('0')});
      pairs.push_back({p.from.child('1'), p.to.child('1')});
    } else {
      pairs.push_back(p);
    }
  }
  return TreeDiagram(std::move(pairs));
}

TreeDiagram multiply(const TreeDiagram& d1, const TreeDiagram& d2) {
  const auto& second = d2.pairs();
  std::vector<BranchPair> out;
  out.reserve(d1.leaf_count() + d2.leaf_count());
  for (const BranchPair& p : d1.pairs()) {
    auto it = std::lower_bound(second.begin(), second.end(), p.to,
                               [](const BranchPair& q, const Word& w) { return q.from < w; });
    if (it != second.end() && p.to.is_prefix_of(it->from)) {
      // The target of p is refined in d2: split p.
      for (; it != second.end() && p.to.is_prefix_of(it->from); ++it)
        out.push_back({p.from + it->from.drop(p.to.size()), it->to});
    } else {
      // A source of d2 is a proper prefix of p.to.
      --it;
      out.push_back({p.from, it->to + p.to.drop(it->from.size())});
    }
  }
  return reduce(TreeDiagram(std::move(out)));
}

TreeDiagram invert(const TreeDiagram& d) {
  std::vector<BranchPair> pairs;
  pairs.reserve(d.leaf_count());
  for (const BranchPair& p : d.pairs()) pairs.push_back({p.to, p.from});
  return TreeDiagram(std::move(pairs));
}

TreeDiagram power(const TreeDiagram& d, long k) {
  TreeDiagram base = reduce(k < 0 ? invert(d) : d);
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  TreeDiagram result;
  while (e > 0) {
    if (e & 1UL) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

TreeDiagram conjugate(const TreeDiagram& a, const TreeDiagram& g) {
  return multiply(multiply(invert(g), a), g);
}

bool is_identity(const TreeDiagram& d) {
  for (const BranchPair& p : d.pairs())
    if (p.from != p.to) return false;
  return true;
}

bool equal(const TreeDiagram& a, const TreeDiagram& b) { return reduce(a) == reduce(b); }

Dyadic evaluate(const TreeDiagram& d, const Dyadic& x) {
  Dyadic p = x.fractional();
  if (p == kZero) p = kOne;
  const BranchPair& pair = d.pairs()[locate_left(d.pairs(), p)];
  return apply_pair(pair, p).fractional();
}

RegionSet map_region(const TreeDiagram& d, const RegionSet& r) {
  const auto& pairs = d.pairs();
  std::vector<Piece> out;
  for (const Piece& piece : r.pieces()) {
    std::size_t j = piece.lo == kZero ? 0 : locate_left(pairs, piece.lo);
    for (; j < pairs.size(); ++j) {
      const BranchPair& p = pairs[j];
      Dyadic ulo = p.from.left();
      if (ulo >= piece.hi) break;
      Piece clip = intersect(piece, Piece{ulo, ulo + p.from.length(), false, true});
      if (clip.empty()) continue;
      out.push_back({apply_pair(p, clip.lo), apply_pair(p, clip.hi), clip.lo_closed, clip.hi_closed});
    }
  }
  return RegionSet(std::move(out));
}

RegionSet map_interval(const TreeDiagram& d, const DyadicInterval& i) {
  return map_region(d, RegionSet(i));
}

Slopes slopes_at(const TreeDiagram& d, const Dyadic& x) {
  if (x <= kZero || x >= kOne) throw std::invalid_argument("slopes_at needs x in (0,1)");
  const BranchPair& l = d.pairs()[locate_left(d.pairs(), x)];
  const BranchPair& r = d.pairs()[locate_right(d.pairs(), x)];
  Slopes s{static_cast<int>(slope_exponent(l)), static_cast<int>(slope_exponent(r))};
  s.continuous = apply_pair(l, x).fractional() == apply_pair(r, x).fractional();
  return s;
}

bool has_pair_of_branches(const TreeDiagram& d, const Word& u, const Word& v) {
  const auto& pairs = d.pairs();
  auto it = std::lower_bound(pairs.begin(), pairs.end(), u,
                             [](const BranchPair& q, const Word& w) { return q.from < w; });
  if (it != pairs.end() && u.is_prefix_of(it->from)) {
    for (; it != pairs.end() && u.is_prefix_of(it->from); ++it)
      if (it->to != v + it->from.drop(u.size())) return false;
    return true;
  }
  --it;
  return v == it->to + u.drop(it->from.size());
}

std::vector<Dyadic> fixed_dyadic_points(const TreeDiagram& d) {
  const auto& pairs = d.pairs();
  std::vector<Dyadic> candidates{kZero, kOne};
  for (const BranchPair& p : pairs) {
    Dyadic a = p.from.left();
    candidates.push_back(a);
    candidates.push_back(a + p.from.length());
    long e = slope_exponent(p);
    if (e == 0) continue;
    // x = v + (x - u) 2^e  =>  x = (u 2^f - v) / (2^f - 1) for e = f > 0,
    // and x = (v 2^f - u) / (2^f - 1) for e = -f < 0.
    long f = e > 0 ? e : -e;
    Dyadic num = e > 0 ? a.scaled(f) - p.to.left() : p.to.left().scaled(f) - a;
    mpz_class den = (mpz_class(1) << static_cast<mp_bitcnt_t>(f)) - 1;
    if (mpz_divisible_p(num.numerator().get_mpz_t(), den.get_mpz_t()))
      candidates.push_back(Dyadic(num.numerator() / den, num.exponent()));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<Dyadic> out;
  for (const Dyadic& x : candidates) {
    if (x < kZero || x > kOne) continue;
    if (x == kZero || x == kOne) {
      if (evaluate(d, kZero) == kZero) out.push_back(x);
      continue;
    }
    if (evaluate(d, x) != x) continue;
    const BranchPair& l = pairs[locate_left(pairs, x)];
    const BranchPair& r = pairs[locate_right(pairs, x)];
    bool interior = l.from == l.to && r.from == r.to;
    if (!interior) out.push_back(x);
  }
  return out;
}

std::vector<Dyadic> breakpoints(const TreeDiagram& d) {
  TreeDiagram r = reduce(d);
  const auto& pairs = r.pairs();
  std::vector<Dyadic> out;
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    Dyadic x = pairs[i].from.left();
    bool same_map = slope_exponent(pairs[i - 1]) == slope_exponent(pairs[i]) &&
                    apply_pair(pairs[i - 1], x) == apply_pair(pairs[i], x);
    if (!same_map) out.push_back(x);
  }
  return out;
}

}  // namespace thompson
