#include "thompson/interval.hpp"

#include <algorithm>
#include <sstream>

namespace thompson {

namespace {

const Dyadic kZero(0);
const Dyadic kOne(1);

// Puts lo in [0,1) and hi in (lo, lo + 1].
void normalize_endpoints(Dyadic& lo, Dyadic& hi) {
  if (lo == hi) throw std::invalid_argument("interval endpoints coincide: " + lo.to_string());
  Dyadic shift(lo.floor(), 0);
  lo -= shift;
  hi -= shift;
  while (hi <= lo) hi += kOne;
  while (hi > lo + kOne) hi -= kOne;
}

}  // namespace

DyadicInterval::DyadicInterval(IntervalKind kind, Dyadic lo, Dyadic hi, std::optional<Word> w)
    : kind_(kind), lo_(std::move(lo)), hi_(std::move(hi)), word_(std::move(w)) {}

DyadicInterval DyadicInterval::word(const Word& u, bool closed) {
  return DyadicInterval(closed ? IntervalKind::ClosedWord : IntervalKind::HalfOpenWord, u.left(),
                        u.right(), u);
}

DyadicInterval DyadicInterval::half_open(const Dyadic& a, const Dyadic& b) {
  Dyadic lo = a, hi = b;
  normalize_endpoints(lo, hi);
  return DyadicInterval(IntervalKind::HalfOpen, lo, hi, std::nullopt);
}

DyadicInterval DyadicInterval::open(const Dyadic& a, const Dyadic& b) {
  Dyadic lo = a, hi = b;
  normalize_endpoints(lo, hi);
  return DyadicInterval(IntervalKind::Open, lo, hi, std::nullopt);
}

DyadicInterval word_to_interval(const Word& u, bool closed) { return DyadicInterval::word(u, closed); }

std::string DyadicInterval::to_string() const {
  switch (kind_) {
    case IntervalKind::ClosedWord:
      return "[" + word_->to_string() + "]";
    case IntervalKind::HalfOpenWord:
      return "(" + word_->to_string() + "]";
    case IntervalKind::HalfOpen:
      return "(" + lo_.to_string() + "," + hi_.to_string() + "]";
    case IntervalKind::Open:
      return "(" + lo_.to_string() + "," + hi_.to_string() + ")";
  }
  return {};
}

DyadicInterval DyadicInterval::parse(std::string_view text) {
  if (text.size() < 2) throw ParseError("interval too short: '" + std::string(text) + "'");
  char open_c = text.front(), close_c = text.back();
  std::string_view body = text.substr(1, text.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string_view::npos) {
    if (close_c != ']' || (open_c != '(' && open_c != '['))
      throw ParseError("word interval must be (u] or [u]: '" + std::string(text) + "'");
    return word(Word::parse(body), open_c == '[');
  }
  if (open_c != '(' || (close_c != ']' && close_c != ')'))
    throw ParseError("general interval must be (a,b] or (a,b): '" + std::string(text) + "'");
  Dyadic a = Dyadic::parse(body.substr(0, comma));
  Dyadic b = Dyadic::parse(body.substr(comma + 1));
  try {
    return close_c == ']' ? half_open(a, b) : open(a, b);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Piece intersect(const Piece& a, const Piece& b) {
  Piece r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

RegionSet::RegionSet(std::vector<Piece> pieces) : pieces_(std::move(pieces)) { normalize(); }

RegionSet::RegionSet(const DyadicInterval& interval) {
  // Split the (possibly wrapping) interval at the circle point 0 == 1.
  const Dyadic& lo = interval.lo();
  const Dyadic& hi = interval.hi();
  bool lc = interval.lo_closed();
  bool hc = interval.hi_closed();
  if (hi <= kOne) {
    if (lo == kZero && lc) {
      // [0, hi...]: the point 0 is stored as 1.
      pieces_.push_back({kOne, kOne, true, true});
      pieces_.push_back({kZero, hi, false, hc});
    } else {
      pieces_.push_back({lo, hi, lc, hc});
    }
  } else {
    pieces_.push_back({lo, kOne, lc, true});
    pieces_.push_back({kZero, hi - kOne, false, hc});
  }
  normalize();
}

RegionSet RegionSet::circle() { return RegionSet(std::vector<Piece>{{kZero, kOne, false, true}}); }

RegionSet RegionSet::point(const Dyadic& x) {
  Dyadic p = x.fractional();
  if (p == kZero) p = kOne;
  return RegionSet(std::vector<Piece>{{p, p, true, true}});
}

void RegionSet::normalize() {
  std::erase_if(pieces_, [](const Piece& p) { return p.empty(); });
  for (const Piece& p : pieces_) {
    if (p.lo.sign() < 0 || p.hi > kOne || (p.lo == kZero && p.lo_closed))
      throw std::invalid_argument("piece outside the fundamental domain (0,1]");
  }
  std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Piece> merged;
  for (Piece& p : pieces_) {
    if (!merged.empty()) {
      Piece& last = merged.back();
      bool touches = last.hi > p.lo || (last.hi == p.lo && (last.hi_closed || p.lo_closed));
      if (touches) {
        if (p.hi > last.hi) {
          last.hi = p.hi;
          last.hi_closed = p.hi_closed;
        } else if (p.hi == last.hi) {
          last.hi_closed = last.hi_closed || p.hi_closed;
        }
        continue;
      }
    }
    merged.push_back(std::move(p));
  }
  pieces_ = std::move(merged);
}

bool RegionSet::is_circle() const { return *this == circle(); }

bool RegionSet::contains(const Dyadic& x) const {
  Dyadic p = x.fractional();
  if (p == kZero) p = kOne;
  // Pieces are sorted and disjoint; binary search on lo.
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), p,
                             [](const Dyadic& v, const Piece& pc) { return v < pc.lo; });
  if (it != pieces_.begin() && std::prev(it)->contains(p)) return true;
  return it != pieces_.end() && it->contains(p);
}

RegionSet RegionSet::unite(const RegionSet& o) const {
  std::vector<Piece> all = pieces_;
  all.insert(all.end(), o.pieces_.begin(), o.pieces_.end());
  return RegionSet(std::move(all));
}

RegionSet RegionSet::intersect(const RegionSet& o) const {
  std::vector<Piece> out;
  std::size_t i = 0, j = 0;
  while (i < pieces_.size() && j < o.pieces_.size()) {
    Piece p = thompson::intersect(pieces_[i], o.pieces_[j]);
    if (!p.empty()) out.push_back(p);
    // Advance whichever piece ends first.
    const Piece& a = pieces_[i];
    const Piece& b = o.pieces_[j];
    if (a.hi < b.hi || (a.hi == b.hi && !a.hi_closed))
      ++i;
    else
      ++j;
  }
  return RegionSet(std::move(out));
}

RegionSet RegionSet::complement() const {
  std::vector<Piece> out;
  Dyadic cursor = kZero;
  bool cursor_included = false;  // whether the cursor point belongs to the gap
  for (const Piece& p : pieces_) {
    Piece gap{cursor, p.lo, cursor_included, !p.lo_closed};
    if (!gap.empty()) out.push_back(gap);
    cursor = p.hi;
    cursor_included = !p.hi_closed;
  }
  Piece tail{cursor, kOne, cursor_included, true};
  if (!tail.empty()) out.push_back(tail);
  return RegionSet(std::move(out));
}

bool RegionSet::is_closed() const {
  bool has_zero = contains(kZero);
  for (const Piece& p : pieces_) {
    if (!p.hi_closed) return false;
    if (!p.lo_closed && !(p.lo == kZero && has_zero)) return false;
  }
  return true;
}

std::string RegionSet::to_string() const {
  if (pieces_.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    if (i) s += " U ";
    s += p.lo_closed ? "[" : "(";
    s += p.lo.to_string() + "," + p.hi.to_string();
    s += p.hi_closed ? "]" : ")";
  }
  return s;
}

Relation interval_relations(const RegionSet& a, const RegionSet& b) {
  if (a.disjoint_from(b)) return Relation::Disjoint;
  if (a == b) return Relation::Equal;
  if (a.subset_of(b)) return Relation::Subset;
  if (b.subset_of(a)) return Relation::Superset;
  return Relation::Overlap;
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Disjoint: return "disjoint";
    case Relation::Subset: return "subset";
    case Relation::Superset: return "superset";
    case Relation::Equal: return "equal";
    case Relation::Overlap: return "overlap";
  }
  return "?";
}

RegionSet region_complement(const RegionSet& r) { return r.complement(); }

std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.to_string(); }
std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.to_string(); }
std::ostream& operator<<(std::ostream& os, const DyadicInterval& i) { return os << i.to_string(); }
std::ostream& operator<<(std::ostream& os, const RegionSet& r) { return os << r.to_string(); }

}  // namespace thompson
