// Circle dynamics of elements of T and V: order detection, wandering
// intervals, conjugation into prescribed position, ping-pong instances and
// orbit containment.
//
// A set U is gamma-wandering when gamma^n(U) and U are disjoint for every n
// with gamma^n != e; weakly gamma-wandering when each gamma^n either fixes U
// pointwise or moves it off itself. All certificates below carry finite exact
// evidence that implies the property for every integer n.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "thompson/diagram.hpp"
#include "thompson/fgen.hpp"

namespace thompson {

struct Budgets {
  long max_order = 96;
  long expansion_budget = 6;
  long power_budget = 24;

  /// Defaults overridden by THOMPSON_MAX_ORDER, THOMPSON_EXPANSION_BUDGET and
  /// THOMPSON_POWER_BUDGET when set.
  static Budgets from_env();
  std::string to_string() const;
};

/// A representative of gamma with source branch v strictly refined in the
/// target (v w_1, ..., v w_m, m >= 2) such that (v], gamma(v], ...,
/// gamma^(r-1)(v] are pairwise disjoint and gamma^r(v] = (v w_k].
struct RevealingEvidence {
  TreeDiagram diagram;
  Word v;
  std::vector<Word> ws;
  std::size_t k = 0;  // 0-based
  long r = 1;
  bool operator==(const RevealingEvidence&) const = default;
};

/// gamma^order = e; the local period of x is m; the half-open interval
/// (x - eps, x] has m pairwise disjoint images and is fixed pointwise by gamma^m.
struct PeriodicEvidence {
  long order = 1;
  Dyadic x;
  long m = 1;
  Dyadic eps;
  bool operator==(const PeriodicEvidence&) const = default;
};

enum class WanderingKind { Wandering, Weak };
const char* to_string(WanderingKind k);

struct WanderingCertificate {
  TreeDiagram gamma;
  DyadicInterval U = DyadicInterval::word(Word(), false);
  WanderingKind kind = WanderingKind::Wandering;
  std::variant<RevealingEvidence, PeriodicEvidence> evidence;
  std::size_t j = 0;  // chosen index != k when the evidence is revealing
  bool operator==(const WanderingCertificate&) const = default;
};

struct OrderResult {
  enum class Kind { Periodic, InfiniteOrder, Unknown };
  Kind kind = Kind::Unknown;
  long order = 0;  // for Periodic
  std::optional<RevealingEvidence> evidence;  // for InfiniteOrder
};

Verdict verify_revealing(const TreeDiagram& gamma, const RevealingEvidence& ev);
Verdict verify_periodic(const TreeDiagram& gamma, const PeriodicEvidence& ev);

/// Searches breadth-first over up to expansion_budget caret expansions of the
/// reduced diagram and r <= power_budget. nullopt means the budget ran out.
std::optional<RevealingEvidence> revealing_search(const TreeDiagram& gamma, long expansion_budget,
                                                  long power_budget);

OrderResult detect_order(const TreeDiagram& gamma, const Budgets& budgets = {});

/// Raised when the search budgets are exhausted before evidence is found.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument for the identity and BudgetExhausted when the
/// order can be neither certified finite nor infinite.
WanderingCertificate wandering_interval(const TreeDiagram& gamma, const Budgets& budgets = {});

/// Evidence re-check plus brute force over 1 <= |n| <= n_max.
Verdict verify_wandering(const WanderingCertificate& cert, long n_max);

/// An element of T mapping the open interval src onto the open interval dst.
TreeDiagram transitive_map(const DyadicInterval& src, const DyadicInterval& dst);

/// A wandering certificate for gamma moved onto a closed set A by conjugation:
/// conjugator maps source (inside base.U) onto target, which contains A, so A
/// is (weakly) wandering for gamma_conj = conjugator^-1 gamma conjugator.
struct ConjugatedWandering {
  WanderingCertificate base;
  TreeDiagram conjugator;
  DyadicInterval source = DyadicInterval::word(Word(), false);
  DyadicInterval target = DyadicInterval::word(Word(), false);
  RegionSet region;
  TreeDiagram gamma_conj;
  WanderingKind kind = WanderingKind::Wandering;
  bool operator==(const ConjugatedWandering&) const = default;
};

ConjugatedWandering avoid_conjugator(const TreeDiagram& gamma, const RegionSet& closed_set,
                                     const Budgets& budgets = {});
Verdict verify_conjugated(const ConjugatedWandering& cw, long n_max);

struct PingPongInstance {
  std::vector<TreeDiagram> reps;
  std::vector<DyadicInterval> intervals;
  std::vector<ConjugatedWandering> certs;  // certs[n] covers the complement of intervals[n]

  std::vector<TreeDiagram> gammas() const;
  bool operator==(const PingPongInstance&) const = default;
};

/// Throws std::invalid_argument for overlapping or non-open intervals,
/// BudgetExhausted when a representative's order is undetermined and
/// CertificationError when, with require_wandering, a certificate is only
/// weakly wandering.
PingPongInstance build_pingpong(const std::vector<TreeDiagram>& reps,
                                const std::vector<DyadicInterval>& intervals, bool require_wandering,
                                const Budgets& budgets = {});

/// Re-verifies every certificate and checks gamma_n^k(I_i) within I_n for all
/// i != n and 1 <= |k| <= k_max with gamma_n^k != e.
Verdict verify_pingpong(const PingPongInstance& inst, long n_max, long k_max);

struct FreeProductReport {
  std::size_t words = 0;
  std::size_t identities = 0;
  std::size_t inclusion_checks = 0;
  std::size_t inclusion_failures = 0;
  std::size_t max_leaves = 0;
  std::size_t total_leaves = 0;
  bool operator==(const FreeProductReport&) const = default;
};

/// Random reduced words of 1..max_len syllables with exponents in [-3, 3]
/// (skipping powers equal to e); each must be a non-identity element.
FreeProductReport free_product_test(const PingPongInstance& inst, std::size_t max_len, std::size_t trials,
                                    std::uint64_t seed);

struct Letter {
  std::size_t gen;
  bool inverse;
  bool operator==(const Letter&) const = default;
};

struct OrbitPoint {
  Dyadic point;
  std::vector<Letter> word;  // a shortest word reaching the point, applied left to right
};

/// Breadth-first orbit of start under gens and their inverses, words of length
/// at most max_word_len; points in discovery order.
std::vector<OrbitPoint> orbit_bfs(const std::vector<TreeDiagram>& gens, const Dyadic& start,
                                  std::size_t max_word_len);

struct OrbitLemmaReport {
  std::size_t points = 0;
  std::size_t checked = 0;
  std::size_t failures = 0;
  bool inside_quarter = true;  // every orbit point lies in [0, 1/4)
  bool operator==(const OrbitLemmaReport&) const = default;
  bool ok() const { return failures == 0 && inside_quarter; }
};

/// For each orbit point alpha != 0 with shortest word in syllable form
/// gamma_i1^k1 ... gamma_im^km, checks alpha in I_im.
OrbitLemmaReport orbit_lemma_check(const PingPongInstance& inst, std::size_t max_word_len);

/// I_n = ((n-1)/8, (n-1)/8 + 1/16), n = 1..count (count <= 8).
std::vector<DyadicInterval> t_instance_intervals(std::size_t count);
/// I_n = (2^-(n+2), 3 * 2^-(n+3)), n = 1..count; pairwise disjoint inside (0, 1/4).
std::vector<DyadicInterval> v_instance_intervals(std::size_t count);

}  // namespace thompson
