#include "thompson/vdyn.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "thompson/sampling.hpp"

namespace thompson {

namespace {

const Dyadic kZero(0);
const Dyadic kOne(1);

long env_or(const char* name, long fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  long parsed = std::strtol(v, &end, 10);
  if (*end != '\0' || parsed < 1) throw std::invalid_argument(std::string("bad value for ") + name);
  return parsed;
}

// Every piece of d meeting U is the identity there.
bool fixes_pointwise(const TreeDiagram& d, const RegionSet& u) {
  for (const BranchPair& p : d.pairs()) {
    if (p.from == p.to) continue;
    if (!RegionSet(DyadicInterval::word(p.from, false)).disjoint_from(u)) return false;
  }
  return true;
}

std::vector<Word> sorted_targets(const TreeDiagram& d) {
  std::vector<Word> t;
  for (const BranchPair& p : d.pairs()) t.push_back(p.to);
  std::sort(t.begin(), t.end());
  return t;
}

std::vector<Word> refinements_of(const std::vector<Word>& targets, const Word& v) {
  std::vector<Word> ws;
  auto it = std::lower_bound(targets.begin(), targets.end(), v);
  for (; it != targets.end() && v.is_prefix_of(*it); ++it)
    if (v.is_proper_prefix_of(*it)) ws.push_back(it->drop(v.size()));
  return ws;
}

// Evidence for one representative, trying each admissible source branch v.
std::optional<RevealingEvidence> try_representative(const TreeDiagram& d, long power_budget) {
  std::vector<Word> targets = sorted_targets(d);
  for (const BranchPair& p : d.pairs()) {
    std::vector<Word> ws = refinements_of(targets, p.from);
    if (ws.size() < 2) continue;
    std::vector<RegionSet> goals;
    for (const Word& w : ws) goals.emplace_back(DyadicInterval::word(p.from + w, false));
    RegionSet cur(DyadicInterval::word(p.from, false));
    RegionSet seen = cur;
    for (long r = 1; r <= power_budget; ++r) {
      cur = map_region(d, cur);
      auto hit = std::find(goals.begin(), goals.end(), cur);
      if (hit != goals.end())
        return RevealingEvidence{d, p.from, ws, static_cast<std::size_t>(hit - goals.begin()), r};
      if (!cur.disjoint_from(seen)) break;
      seen = seen.unite(cur);
    }
  }
  return std::nullopt;
}

long permutation_order(const std::vector<std::size_t>& perm) {
  std::vector<bool> done(perm.size(), false);
  long order = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (done[i]) continue;
    long len = 0;
    for (std::size_t j = i; !done[j]; j = perm[j]) {
      done[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

// Order of gamma when T+ and T- have the same leaves (the pairs then permute leaves).
std::optional<long> same_tree_order(const TreeDiagram& d) {
  std::vector<Word> sources;
  for (const BranchPair& p : d.pairs()) sources.push_back(p.from);
  if (sources != sorted_targets(d)) return std::nullopt;
  std::vector<std::size_t> perm(d.leaf_count());
  for (std::size_t i = 0; i < d.leaf_count(); ++i)
    perm[i] = static_cast<std::size_t>(std::lower_bound(sources.begin(), sources.end(), d.pairs()[i].to) -
                                       sources.begin());
  return permutation_order(perm);
}

// Images gamma^0(U), ..., gamma^(count-1)(U) are pairwise disjoint.
bool disjoint_orbit(const TreeDiagram& gamma, const RegionSet& u, long count) {
  RegionSet cur = u, seen = u;
  for (long t = 1; t < count; ++t) {
    cur = map_region(gamma, cur);
    if (!cur.disjoint_from(seen)) return false;
    seen = seen.unite(cur);
  }
  return true;
}

long local_period(const TreeDiagram& gamma, const Dyadic& x, long bound) {
  Dyadic y = x;
  for (long t = 1; t <= bound; ++t) {
    y = evaluate(gamma, y);
    if (y == x) return t;
  }
  throw std::logic_error("point has no period within the element order");
}

PeriodicEvidence periodic_evidence(const TreeDiagram& gamma, long order) {
  TreeDiagram g = reduce(gamma);
  std::vector<TreeDiagram> powers{identity()};
  std::set<Dyadic> breaks{kZero};
  for (long t = 1; t <= order; ++t) {
    powers.push_back(multiply(powers.back(), g));
    for (const Dyadic& b : breakpoints(powers.back())) breaks.insert(b);
  }
  if (!is_identity(powers.back())) throw std::logic_error("periodic_evidence: gamma^order != e");
  for (const BranchPair& p : g.pairs()) {
    if (p.from == p.to) continue;
    for (long extra = 2; extra <= 6; ++extra) {
      long depth = static_cast<long>(p.from.size()) + extra;
      for (long j = 1; j < (1L << extra); j += 2) {
        Dyadic x = p.from.left() + Dyadic(j).scaled(-depth);
        if (evaluate(g, x) == x || breaks.count(x)) continue;
        long m = local_period(g, x, order);
        for (long k = depth + 1; k <= depth + 64; ++k) {
          Dyadic eps = Dyadic::pow2(-k);
          RegionSet u(DyadicInterval::half_open(x - eps, x));
          if (disjoint_orbit(g, u, m) && fixes_pointwise(powers[static_cast<std::size_t>(m)], u))
            return PeriodicEvidence{order, x, m, eps};
        }
      }
    }
  }
  throw std::logic_error("periodic_evidence: no base point found");
}

// Circle arc (lo, lo + len] as word intervals in circular order from lo.
std::vector<Word> decompose_arc(const Dyadic& lo, const Dyadic& len) {
  std::vector<Word> out;
  auto greedy = [&out](Dyadic x, const Dyadic& y) {
    while (x < y) {
      unsigned k = x.exponent();
      while (Dyadic::pow2(-static_cast<long>(k)) > y - x) ++k;
      Dyadic step = Dyadic::pow2(-static_cast<long>(k));
      out.push_back(*word_from_endpoints(x, x + step));
      x += step;
    }
  };
  Dyadic hi = lo + len;
  if (hi <= kOne) {
    greedy(lo, hi);
  } else {
    greedy(lo, kOne);
    greedy(kZero, hi - kOne);
  }
  return out;
}

// Splits the widest intervals until the list has `count` words.
void refine_to(std::vector<Word>& words, std::size_t count) {
  while (words.size() < count) {
    auto widest = std::min_element(words.begin(), words.end(),
                                   [](const Word& a, const Word& b) { return a.size() < b.size(); });
    Word w = *widest;
    auto pos = words.erase(widest);
    pos = words.insert(pos, w.child('1'));
    words.insert(pos, w.child('0'));
  }
}

std::optional<long> periodic_order(const WanderingCertificate& c) {
  if (auto* p = std::get_if<PeriodicEvidence>(&c.evidence)) return p->order;
  return std::nullopt;
}

// Brute force over 1 <= |n| <= n_max for the set `u` under `gamma`.
Verdict brute_force(const TreeDiagram& gamma, const RegionSet& u, WanderingKind kind,
                    std::optional<long> order, long n_max) {
  TreeDiagram inverse = invert(gamma);
  for (int sign : {1, -1}) {
    const TreeDiagram& step = sign > 0 ? gamma : inverse;
    RegionSet cur = u;
    for (long n = 1; n <= n_max; ++n) {
      cur = map_region(step, cur);
      if (cur.disjoint_from(u)) continue;
      long exponent = sign * n;
      if (order && exponent % *order == 0) continue;  // gamma^n = e
      if (kind == WanderingKind::Weak && fixes_pointwise(power(gamma, exponent), u)) continue;
      return Verdict::fail("brute force: gamma^" + std::to_string(exponent) + " moves the set onto itself");
    }
  }
  return {};
}

}  // namespace

Budgets Budgets::from_env() {
  Budgets b;
  b.max_order = env_or("THOMPSON_MAX_ORDER", b.max_order);
  b.expansion_budget = env_or("THOMPSON_EXPANSION_BUDGET", b.expansion_budget);
  b.power_budget = env_or("THOMPSON_POWER_BUDGET", b.power_budget);
  return b;
}

std::string Budgets::to_string() const {
  return "max_order=" + std::to_string(max_order) + " expansion_budget=" + std::to_string(expansion_budget) +
         " power_budget=" + std::to_string(power_budget);
}

const char* to_string(WanderingKind k) { return k == WanderingKind::Wandering ? "wandering" : "weakly-wandering"; }

Verdict verify_revealing(const TreeDiagram& gamma, const RevealingEvidence& ev) {
  if (!equal(ev.diagram, gamma)) return Verdict::fail("revealing: diagram does not represent gamma");
  const auto& pairs = ev.diagram.pairs();
  if (std::none_of(pairs.begin(), pairs.end(), [&](const BranchPair& p) { return p.from == ev.v; }))
    return Verdict::fail("revealing: v is not a source branch");
  if (ev.ws.size() < 2) return Verdict::fail("revealing: fewer than two refinements of v");
  if (ev.ws != refinements_of(sorted_targets(ev.diagram), ev.v))
    return Verdict::fail("revealing: ws are not the target branches below v");
  if (ev.k >= ev.ws.size()) return Verdict::fail("revealing: k out of range");
  if (ev.r < 1) return Verdict::fail("revealing: r must be positive");
  RegionSet start(DyadicInterval::word(ev.v, false));
  if (!disjoint_orbit(ev.diagram, start, ev.r)) return Verdict::fail("revealing: iterates of (v] overlap");
  RegionSet cur = start;
  for (long t = 0; t < ev.r; ++t) cur = map_region(ev.diagram, cur);
  if (cur != RegionSet(DyadicInterval::word(ev.v + ev.ws[ev.k], false)))
    return Verdict::fail("revealing: gamma^r(v] is not (v w_k]");
  return {};
}

Verdict verify_periodic(const TreeDiagram& gamma, const PeriodicEvidence& ev) {
  if (ev.order < 1 || ev.m < 1 || ev.order % ev.m != 0) return Verdict::fail("periodic: bad order or period");
  if (ev.eps.sign() <= 0 || ev.x.sign() < 0 || ev.x >= kOne) return Verdict::fail("periodic: bad base point");
  TreeDiagram acc;
  for (long t = 1; t <= ev.order; ++t) {
    acc = multiply(acc, gamma);
    if (t < ev.order && is_identity(acc)) return Verdict::fail("periodic: order is not minimal");
  }
  if (!is_identity(acc)) return Verdict::fail("periodic: gamma^order != e");
  Dyadic y = ev.x;
  for (long t = 1; t <= ev.m; ++t) {
    y = evaluate(gamma, y);
    if ((y == ev.x) != (t == ev.m)) return Verdict::fail("periodic: m is not the period of x");
  }
  if (ev.eps >= kOne) return Verdict::fail("periodic: eps too large");
  RegionSet u(DyadicInterval::half_open(ev.x - ev.eps, ev.x));
  if (!disjoint_orbit(gamma, u, ev.m)) return Verdict::fail("periodic: images of (x-eps,x] overlap");
  if (!fixes_pointwise(power(gamma, ev.m), u)) return Verdict::fail("periodic: gamma^m is not the identity near x");
  return {};
}

std::optional<RevealingEvidence> revealing_search(const TreeDiagram& gamma, long expansion_budget,
                                                  long power_budget) {
  std::vector<TreeDiagram> level{reduce(gamma)};
  std::set<std::string> seen{level.front().to_text()};
  for (long depth = 0;; ++depth) {
    for (const TreeDiagram& d : level)
      if (auto ev = try_representative(d, power_budget)) return ev;
    if (depth == expansion_budget) break;
    std::vector<TreeDiagram> next;
    for (const TreeDiagram& d : level)
      for (std::size_t i = 1; i <= d.leaf_count(); ++i) {
        TreeDiagram e = expand(d, i);
        if (seen.insert(e.to_text()).second) next.push_back(std::move(e));
      }
    level = std::move(next);
  }
  return std::nullopt;
}

OrderResult detect_order(const TreeDiagram& gamma, const Budgets& budgets) {
  if (budgets.max_order < 1) throw std::invalid_argument("max_order must be >= 1");
  TreeDiagram g = reduce(gamma);
  OrderResult res;
  if (auto o = same_tree_order(g)) {
    if (*o <= budgets.max_order) {
      res.kind = OrderResult::Kind::Periodic;
      res.order = *o;
    }
    return res;
  }
  TreeDiagram acc = g;
  for (long t = 1; t <= budgets.max_order; ++t) {
    if (is_identity(acc)) {
      res.kind = OrderResult::Kind::Periodic;
      res.order = t;
      return res;
    }
    acc = multiply(acc, g);
  }
  if (auto ev = revealing_search(g, budgets.expansion_budget, budgets.power_budget)) {
    res.kind = OrderResult::Kind::InfiniteOrder;
    res.evidence = std::move(ev);
  }
  return res;
}

WanderingCertificate wandering_interval(const TreeDiagram& gamma, const Budgets& budgets) {
  TreeDiagram g = reduce(gamma);
  if (is_identity(g)) throw std::invalid_argument("the identity has no wandering interval");
  OrderResult order = detect_order(g, budgets);
  WanderingCertificate c;
  c.gamma = g;
  switch (order.kind) {
    case OrderResult::Kind::Periodic: {
      PeriodicEvidence ev = periodic_evidence(g, order.order);
      c.U = DyadicInterval::half_open(ev.x - ev.eps, ev.x);
      c.kind = ev.m == ev.order ? WanderingKind::Wandering : WanderingKind::Weak;
      if (g.group_class() != GroupClass::V && ev.m != ev.order)
        throw std::logic_error("periodic element of T with a short orbit");
      c.evidence = std::move(ev);
      break;
    }
    case OrderResult::Kind::InfiniteOrder: {
      RevealingEvidence ev = std::move(*order.evidence);
      c.j = ev.k == 0 ? 1 : 0;
      c.U = DyadicInterval::word(ev.v + ev.ws[c.j], false);
      c.kind = WanderingKind::Wandering;
      c.evidence = std::move(ev);
      break;
    }
    case OrderResult::Kind::Unknown:
      throw BudgetExhausted("order undetermined within budgets (" + budgets.to_string() + ")");
  }
  return c;
}

Verdict verify_wandering(const WanderingCertificate& c, long n_max) {
  try {
    if (is_identity(c.gamma)) return Verdict::fail("wandering: gamma is the identity");
    if (auto* rev = std::get_if<RevealingEvidence>(&c.evidence)) {
      if (Verdict v = verify_revealing(c.gamma, *rev); !v) return v;
      if (c.j >= rev->ws.size() || c.j == rev->k) return Verdict::fail("wandering: j must differ from k");
      if (c.U != DyadicInterval::word(rev->v + rev->ws[c.j], false)) return Verdict::fail("wandering: U is not (v w_j]");
      if (c.kind != WanderingKind::Wandering) return Verdict::fail("wandering: revealing evidence gives wandering kind");
    } else {
      const auto& per = std::get<PeriodicEvidence>(c.evidence);
      if (Verdict v = verify_periodic(c.gamma, per); !v) return v;
      if (c.U != DyadicInterval::half_open(per.x - per.eps, per.x)) return Verdict::fail("wandering: U is not (x-eps,x]");
      if (c.kind == WanderingKind::Wandering && per.m != per.order)
        return Verdict::fail("wandering: short local period only gives weak kind");
      if (c.j != 0) return Verdict::fail("wandering: j is unused for periodic evidence");
    }
    return brute_force(c.gamma, RegionSet(c.U), c.kind, periodic_order(c), n_max);
  } catch (const std::exception& e) {
    return Verdict::fail(std::string("exception: ") + e.what());
  }
}

TreeDiagram transitive_map(const DyadicInterval& src, const DyadicInterval& dst) {
  if (src.kind() != IntervalKind::Open || dst.kind() != IntervalKind::Open)
    throw std::invalid_argument("transitive_map needs open intervals");
  if (src.length() >= kOne || dst.length() >= kOne)
    throw std::invalid_argument("transitive_map needs proper subintervals of the circle");
  std::vector<Word> a = decompose_arc(src.lo(), src.length());
  std::vector<Word> ac = decompose_arc(src.hi().fractional(), kOne - src.length());
  std::vector<Word> b = decompose_arc(dst.lo(), dst.length());
  std::vector<Word> bc = decompose_arc(dst.hi().fractional(), kOne - dst.length());
  refine_to(a, b.size());
  refine_to(b, a.size());
  refine_to(ac, bc.size());
  refine_to(bc, ac.size());
  std::vector<BranchPair> pairs;
  for (std::size_t i = 0; i < a.size(); ++i) pairs.push_back({a[i], b[i]});
  for (std::size_t i = 0; i < ac.size(); ++i) pairs.push_back({ac[i], bc[i]});
  TreeDiagram g = reduce(TreeDiagram(std::move(pairs)));
  if (map_interval(g, src) != RegionSet(dst)) throw std::logic_error("transitive_map: image check failed");
  return g;
}

ConjugatedWandering avoid_conjugator(const TreeDiagram& gamma, const RegionSet& closed_set, const Budgets& budgets) {
  if (closed_set.is_circle()) throw std::invalid_argument("the set to avoid must not be the whole circle");
  if (!closed_set.is_closed()) throw std::invalid_argument("the set to avoid must be closed");
  ConjugatedWandering cw;
  cw.base = wandering_interval(gamma, budgets);
  cw.kind = cw.base.kind;
  cw.source = DyadicInterval::open(cw.base.U.lo(), cw.base.U.hi());

  // Open arc around A: the circle minus a closed dyadic interval [s, t] in a gap of A.
  const Piece* gap = nullptr;
  RegionSet outside = closed_set.complement();
  for (const Piece& p : outside.pieces())
    if (p.lo < p.hi && (!gap || p.hi - p.lo > gap->hi - gap->lo)) gap = &p;
  if (!gap) throw std::invalid_argument("the set to avoid has no open gap");
  Dyadic width = gap->hi - gap->lo;
  Dyadic s = gap->lo + width.scaled(-2);
  Dyadic t = gap->lo + width.scaled(-1);
  cw.target = DyadicInterval::open(t, s);
  cw.region = closed_set;
  cw.conjugator = transitive_map(cw.source, cw.target);
  cw.gamma_conj = conjugate(cw.base.gamma, cw.conjugator);
  return cw;
}

Verdict verify_conjugated(const ConjugatedWandering& cw, long n_max) {
  try {
    if (Verdict v = verify_wandering(cw.base, n_max); !v) return v;
    if (cw.kind != cw.base.kind) return Verdict::fail("conjugated: kind differs from the base certificate");
    if (cw.source.kind() != IntervalKind::Open || cw.target.kind() != IntervalKind::Open)
      return Verdict::fail("conjugated: source and target must be open intervals");
    if (!RegionSet(cw.source).subset_of(RegionSet(cw.base.U))) return Verdict::fail("conjugated: source not inside U");
    if (cw.conjugator.group_class() == GroupClass::V) return Verdict::fail("conjugated: conjugator not in T");
    if (map_interval(cw.conjugator, cw.source) != RegionSet(cw.target))
      return Verdict::fail("conjugated: conjugator does not map source onto target");
    if (!cw.region.is_closed() || cw.region.is_circle()) return Verdict::fail("conjugated: region not a proper closed set");
    if (!cw.region.subset_of(RegionSet(cw.target))) return Verdict::fail("conjugated: region not inside target");
    if (cw.gamma_conj != conjugate(cw.base.gamma, cw.conjugator))
      return Verdict::fail("conjugated: gamma_conj is not the conjugate");
    return brute_force(cw.gamma_conj, cw.region, cw.kind, periodic_order(cw.base), n_max);
  } catch (const std::exception& e) {
    return Verdict::fail(std::string("exception: ") + e.what());
  }
}

std::vector<TreeDiagram> PingPongInstance::gammas() const {
  std::vector<TreeDiagram> g;
  for (const auto& c : certs) g.push_back(c.gamma_conj);
  return g;
}

namespace {

void check_intervals(const std::vector<DyadicInterval>& intervals) {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].kind() != IntervalKind::Open) throw std::invalid_argument("ping-pong intervals must be open");
    for (std::size_t j = 0; j < i; ++j)
      if (!RegionSet(intervals[i]).disjoint_from(RegionSet(intervals[j])))
        throw std::invalid_argument("ping-pong intervals " + std::to_string(j + 1) + " and " +
                                    std::to_string(i + 1) + " overlap");
  }
}

}  // namespace

PingPongInstance build_pingpong(const std::vector<TreeDiagram>& reps, const std::vector<DyadicInterval>& intervals,
                                bool require_wandering, const Budgets& budgets) {
  if (reps.size() != intervals.size() || reps.empty())
    throw std::invalid_argument("need one interval per representative");
  check_intervals(intervals);
  PingPongInstance inst;
  inst.intervals = intervals;
  for (std::size_t n = 0; n < reps.size(); ++n) {
    TreeDiagram rep = reduce(reps[n]);
    if (is_identity(rep)) throw std::invalid_argument("ping-pong representatives must be non-trivial");
    ConjugatedWandering cw;
    try {
      cw = avoid_conjugator(rep, RegionSet(intervals[n]).complement(), budgets);
    } catch (const BudgetExhausted& e) {
      throw BudgetExhausted("representative " + std::to_string(n + 1) + ": " + e.what());
    }
    if (require_wandering && cw.kind != WanderingKind::Wandering)
      throw CertificationError("representative " + std::to_string(n + 1) + ": complement only weakly wandering");
    inst.reps.push_back(std::move(rep));
    inst.certs.push_back(std::move(cw));
  }
  return inst;
}

Verdict verify_pingpong(const PingPongInstance& inst, long n_max, long k_max) {
  try {
    if (inst.reps.empty() || inst.reps.size() != inst.intervals.size() || inst.certs.size() != inst.reps.size())
      return Verdict::fail("ping-pong: sizes disagree");
    check_intervals(inst.intervals);
    for (std::size_t n = 0; n < inst.reps.size(); ++n) {
      const ConjugatedWandering& cw = inst.certs[n];
      std::string tag = "ping-pong " + std::to_string(n + 1) + ": ";
      if (cw.base.gamma != reduce(inst.reps[n])) return Verdict::fail(tag + "certificate is for another element");
      RegionSet in(inst.intervals[n]);
      if (cw.region != in.complement()) return Verdict::fail(tag + "certificate does not cover the complement");
      if (Verdict v = verify_conjugated(cw, n_max); !v) return Verdict::fail(tag + v.violated);

      // gamma_n^k maps every other interval into I_n.
      RegionSet others;
      for (std::size_t i = 0; i < inst.intervals.size(); ++i)
        if (i != n) others = others.unite(RegionSet(inst.intervals[i]));
      if (others.empty()) continue;
      auto order = periodic_order(cw.base);
      TreeDiagram inverse = invert(cw.gamma_conj);
      for (int sign : {1, -1}) {
        RegionSet cur = others;
        for (long k = 1; k <= k_max; ++k) {
          cur = map_region(sign > 0 ? cw.gamma_conj : inverse, cur);
          if (order && k % *order == 0) continue;
          if (cur.subset_of(in)) continue;
          if (cw.kind == WanderingKind::Weak && fixes_pointwise(power(cw.gamma_conj, sign * k), in.complement()))
            continue;
          return Verdict::fail(tag + "gamma^" + std::to_string(sign * k) + " does not map the other intervals into I_n");
        }
      }
    }
  } catch (const std::exception& e) {
    return Verdict::fail(std::string("exception: ") + e.what());
  }
  return {};
}

FreeProductReport free_product_test(const PingPongInstance& inst, std::size_t max_len, std::size_t trials,
                                    std::uint64_t seed) {
  FreeProductReport rep;
  std::size_t count = inst.certs.size();
  if (count == 0 || max_len == 0) return rep;
  Rng rng(seed);
  // Syllable powers gamma_n^k for k in [-3, 3] \ {0} that are not e.
  std::vector<std::map<long, TreeDiagram>> syllables(count);
  for (std::size_t n = 0; n < count; ++n) {
    auto order = periodic_order(inst.certs[n].base);
    for (long k = -3; k <= 3; ++k)
      if (k != 0 && !(order && k % *order == 0)) syllables[n].emplace(k, power(inst.certs[n].gamma_conj, k));
  }
  std::set<std::pair<std::size_t, long>> checked;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::size_t len = 1 + uniform_below(rng, max_len);
    TreeDiagram acc;
    std::size_t prev = count;
    for (std::size_t s = 0; s < len; ++s) {
      std::size_t n;
      do {
        n = uniform_below(rng, count);
      } while (n == prev && count > 1);
      if (n == prev) break;  // one generator: a reduced word has a single syllable
      prev = n;
      auto it = syllables[n].begin();
      std::advance(it, static_cast<long>(uniform_below(rng, syllables[n].size())));
      acc = multiply(acc, it->second);
      if (checked.insert({n, it->first}).second) {
        RegionSet in(inst.intervals[n]);
        for (std::size_t i = 0; i < count; ++i) {
          if (i == n) continue;
          ++rep.inclusion_checks;
          if (!map_interval(it->second, inst.intervals[i]).subset_of(in)) ++rep.inclusion_failures;
        }
      }
    }
    ++rep.words;
    rep.max_leaves = std::max(rep.max_leaves, acc.leaf_count());
    rep.total_leaves += acc.leaf_count();
    if (is_identity(acc)) ++rep.identities;
  }
  return rep;
}

std::vector<OrbitPoint> orbit_bfs(const std::vector<TreeDiagram>& gens, const Dyadic& start, std::size_t max_word_len) {
  std::vector<TreeDiagram> letters;
  for (const TreeDiagram& g : gens) {
    letters.push_back(g);
    letters.push_back(invert(g));
  }
  std::vector<OrbitPoint> out{{start.fractional(), {}}};
  std::set<Dyadic> seen{out.front().point};
  std::vector<std::size_t> frontier{0};
  for (std::size_t len = 1; len <= max_word_len && !frontier.empty(); ++len) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      for (std::size_t l = 0; l < letters.size(); ++l) {
        Dyadic y = evaluate(letters[l], out[idx].point);
        if (!seen.insert(y).second) continue;
        OrbitPoint p{y, out[idx].word};
        p.word.push_back({l / 2, l % 2 == 1});
        out.push_back(std::move(p));
        next.push_back(out.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

OrbitLemmaReport orbit_lemma_check(const PingPongInstance& inst, std::size_t max_word_len) {
  OrbitLemmaReport rep;
  auto points = orbit_bfs(inst.gammas(), kZero, max_word_len);
  rep.points = points.size();
  const Dyadic quarter = Dyadic::pow2(-2);
  for (const OrbitPoint& p : points) {
    if (!(p.point < quarter)) rep.inside_quarter = false;
    if (p.point == kZero) continue;
    ++rep.checked;
    std::size_t last = p.word.back().gen;
    if (!RegionSet(inst.intervals[last]).contains(p.point)) ++rep.failures;
  }
  return rep;
}

std::vector<DyadicInterval> t_instance_intervals(std::size_t count) {
  if (count > 8) throw std::invalid_argument("at most 8 T-instance intervals");
  std::vector<DyadicInterval> out;
  for (std::size_t n = 0; n < count; ++n) {
    Dyadic lo = Dyadic(static_cast<long>(n)).scaled(-3);
    out.push_back(DyadicInterval::open(lo, lo + Dyadic::pow2(-4)));
  }
  return out;
}

std::vector<DyadicInterval> v_instance_intervals(std::size_t count) {
  std::vector<DyadicInterval> out;
  for (std::size_t n = 1; n <= count; ++n) {
    long e = static_cast<long>(n);
    out.push_back(DyadicInterval::open(Dyadic::pow2(-(e + 2)), Dyadic(3).scaled(-(e + 3))));
  }
  return out;
}

}  // namespace thompson
