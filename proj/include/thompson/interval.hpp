// Dyadic intervals on the circle and finite unions of them.
//
// The circle is S^1 = [0,1) with 0 == 1. Internally every set lives on the
// fundamental domain (0, 1], where the circle point 0 is stored as 1. This
// matches the left-continuous convention: the word intervals (u] of any
// complete prefix code tile (0, 1] exactly.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "thompson/dyadic.hpp"

namespace thompson {

enum class IntervalKind { ClosedWord, HalfOpenWord, HalfOpen, Open };

/// An interval on the circle. Endpoints satisfy 0 <= lo < 1 and
/// lo < hi <= lo + 1, so hi > 1 means the interval wraps through 0.
class DyadicInterval {
 public:
  /// [u] or (u].
  static DyadicInterval word(const Word& u, bool closed);
  /// (a, b]; endpoints are reduced mod 1, (3/4, 1/8] wraps.
  static DyadicInterval half_open(const Dyadic& a, const Dyadic& b);
  /// (a, b).
  static DyadicInterval open(const Dyadic& a, const Dyadic& b);

  IntervalKind kind() const { return kind_; }
  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  /// Set only for the two word kinds.
  const std::optional<Word>& word() const { return word_; }
  Dyadic length() const { return hi_ - lo_; }
  bool lo_closed() const { return kind_ == IntervalKind::ClosedWord; }
  bool hi_closed() const { return kind_ != IntervalKind::Open; }

  /// "(011]", "[011]", "(3/2^3,1/2^1]" or "(3/2^3,1/2^1)".
  std::string to_string() const;
  static DyadicInterval parse(std::string_view text);

  bool operator==(const DyadicInterval& o) const = default;

 private:
  DyadicInterval(IntervalKind kind, Dyadic lo, Dyadic hi, std::optional<Word> w);
  IntervalKind kind_;
  Dyadic lo_;
  Dyadic hi_;
  std::optional<Word> word_;
};

DyadicInterval word_to_interval(const Word& u, bool closed);

/// A connected piece of a RegionSet on (0, 1]. A degenerate piece lo == hi is
/// a single point and has both ends closed. A piece never has lo == 0 closed.
struct Piece {
  Dyadic lo;
  Dyadic hi;
  bool lo_closed = false;
  bool hi_closed = true;

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(const Dyadic& x) const {
    return (lo < x || (lo_closed && lo == x)) && (x < hi || (hi_closed && hi == x));
  }
  bool operator==(const Piece&) const = default;
};

Piece intersect(const Piece& a, const Piece& b);

/// Finite union of pairwise disjoint pieces on (0, 1], sorted, with touching
/// pieces merged. Two sets are equal as point sets iff their pieces are equal.
class RegionSet {
 public:
  RegionSet() = default;
  explicit RegionSet(std::vector<Piece> pieces);
  RegionSet(const DyadicInterval& interval);  // NOLINT(implicit)

  static RegionSet circle();
  /// The single circle point x (x taken mod 1).
  static RegionSet point(const Dyadic& x);

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  bool is_circle() const;

  /// Membership of a circle point (any representative mod 1).
  bool contains(const Dyadic& x) const;

  RegionSet unite(const RegionSet& o) const;
  RegionSet intersect(const RegionSet& o) const;
  RegionSet complement() const;
  RegionSet minus(const RegionSet& o) const { return intersect(o.complement()); }

  bool disjoint_from(const RegionSet& o) const { return intersect(o).empty(); }
  bool subset_of(const RegionSet& o) const { return minus(o).empty(); }
  /// True when every piece is closed as a subset of the circle.
  bool is_closed() const;

  bool operator==(const RegionSet&) const = default;

  /// Pieces joined by " U "; "{}" for the empty set. Circle point 0 prints as 1.
  std::string to_string() const;

 private:
  void normalize();
  std::vector<Piece> pieces_;
};

enum class Relation { Disjoint, Subset, Superset, Equal, Overlap };

Relation interval_relations(const RegionSet& a, const RegionSet& b);
const char* to_string(Relation r);

RegionSet region_complement(const RegionSet& r);

/// Circle point in [0, 1).
inline Dyadic circle_point(const Dyadic& x) { return x.fractional(); }

std::ostream& operator<<(std::ostream& os, const Dyadic& d);
std::ostream& operator<<(std::ostream& os, const Word& w);
std::ostream& operator<<(std::ostream& os, const DyadicInterval& i);
std::ostream& operator<<(std::ostream& os, const RegionSet& r);

}  // namespace thompson
