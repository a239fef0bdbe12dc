#include "thompson/fgen.hpp"

#include <cstdlib>
#include <sstream>

#include "thompson/sampling.hpp"

namespace thompson {

namespace {

void require_f(const TreeDiagram& g, const char* what) {
  if (g.group_class() != GroupClass::F)
    throw std::invalid_argument(std::string(what) + ": element is not in F");
}

struct LatticeRow {
  long x, y;
  std::vector<long> coeffs;
};

void subtract_multiple(LatticeRow& target, const LatticeRow& by, long q) {
  target.x -= q * by.x;
  target.y -= q * by.y;
  for (std::size_t i = 0; i < target.coeffs.size(); ++i) target.coeffs[i] -= q * by.coeffs[i];
}

void negate(LatticeRow& r) {
  r.x = -r.x;
  r.y = -r.y;
  for (long& c : r.coeffs) c = -c;
}

// Euclid on one coordinate; leaves at most one row with a nonzero entry there,
// which is returned (or rows.end()).
std::vector<LatticeRow>::iterator eliminate(std::vector<LatticeRow>& rows, long LatticeRow::*coord) {
  for (;;) {
    auto pivot = rows.end();
    for (auto it = rows.begin(); it != rows.end(); ++it)
      if ((*it).*coord != 0 && (pivot == rows.end() || std::labs((*it).*coord) < std::labs((*pivot).*coord)))
        pivot = it;
    if (pivot == rows.end()) return pivot;
    bool others = false;
    for (auto it = rows.begin(); it != rows.end(); ++it) {
      if (it == pivot || (*it).*coord == 0) continue;
      subtract_multiple(*it, *pivot, (*it).*coord / (*pivot).*coord);
      others = true;
    }
    if (!others) return pivot;
  }
}

}  // namespace

TreeDiagram x0x1() { return multiply(x0(), x1()); }

AbelianImage abelianization(const TreeDiagram& g) {
  require_f(g, "abelianization");
  const BranchPair& first = g.pairs().front();
  const BranchPair& last = g.pairs().back();
  return {static_cast<long>(first.from.size()) - static_cast<long>(first.to.size()),
          static_cast<long>(last.from.size()) - static_cast<long>(last.to.size())};
}

std::optional<SurjectivityWitness> abelian_surjectivity(const std::vector<AbelianImage>& images) {
  if (images.empty()) return std::nullopt;
  std::vector<LatticeRow> rows;
  for (std::size_t i = 0; i < images.size(); ++i) {
    LatticeRow r{images[i].e0, images[i].e1, std::vector<long>(images.size(), 0)};
    r.coeffs[i] = 1;
    rows.push_back(std::move(r));
  }
  auto first = eliminate(rows, &LatticeRow::x);
  if (first == rows.end() || std::labs(first->x) != 1) return std::nullopt;
  LatticeRow p = *first;
  rows.erase(first);
  auto second = eliminate(rows, &LatticeRow::y);
  if (second == rows.end() || std::labs(second->y) != 1) return std::nullopt;
  LatticeRow q = *second;
  if (p.x < 0) negate(p);
  if (q.y < 0) negate(q);
  subtract_multiple(p, q, p.y);
  return SurjectivityWitness{p.coeffs, q.coeffs};
}

EndpointExponents endpoint_exponents(const TreeDiagram& g) {
  require_f(g, "endpoint_exponents");
  TreeDiagram r = reduce(g);
  EndpointExponents e;
  if (r.leaf_count() > 1) {
    e.a = static_cast<long>(r.pairs().front().from.size());
    e.b = static_cast<long>(r.pairs().front().to.size());
    e.c = static_cast<long>(r.pairs().back().from.size());
    e.d = static_cast<long>(r.pairs().back().to.size());
  }
  if (!has_pair_of_branches(r, Word::repeat('0', e.a), Word::repeat('0', e.b)) ||
      !has_pair_of_branches(r, Word::repeat('1', e.c), Word::repeat('1', e.d)))
    throw std::logic_error("endpoint exponents fail their branch-pair check");
  return e;
}

ConjWitness conj_witness(const TreeDiagram& g) {
  require_f(g, "conj_witness");
  ConjWitness w;
  w.g = reduce(g);
  w.exponents = endpoint_exponents(w.g);
  w.f = conjugate(power(x0x1(), w.exponents.a + w.exponents.c), w.g);
  w.m = w.exponents.b;
  w.n = w.exponents.c + w.exponents.d + 1;
  Word zm = Word::repeat('0', static_cast<std::size_t>(w.m));
  Word on = Word::repeat('1', static_cast<std::size_t>(w.n));
  if (!has_pair_of_branches(w.f, zm + Word("10"), on + Word("0")) ||
      !has_pair_of_branches(w.f, zm + Word("11"), on + Word("10")))
    throw std::logic_error("conj_witness: f lacks its branch pairs (implementation bug)");
  return w;
}

std::pair<TreeDiagram, TreeDiagram> closure_witnesses(const ConjWitness& w) {
  TreeDiagram left = power(x0(), -(w.m - 1));
  TreeDiagram h1 = multiply(multiply(left, w.f), power(x0(), -(w.n - 1)));
  TreeDiagram h2 = multiply(multiply(left, w.f), power(x0(), -w.n));
  if (!has_pair_of_branches(h1, Word("010"), Word("10")) || !has_pair_of_branches(h2, Word("011"), Word("10")))
    throw std::logic_error("closure_witnesses: postcondition failed (implementation bug)");
  return {h1, h2};
}

GeneratorWord& GeneratorWord::append(int symbol, long exponent) {
  for (long i = 0; i < std::labs(exponent); ++i) letters_.push_back({symbol, exponent < 0});
  return *this;
}

std::string GeneratorWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  for (const Letter& l : letters_) {
    if (!s.empty()) s += ' ';
    s += static_cast<char>('A' + l.symbol);
    if (l.inverse) s += '\'';
  }
  return s;
}

GeneratorWord GeneratorWord::parse(std::string_view text) {
  if (text == "1") return GeneratorWord();
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok.empty() || tok.size() > 2 || tok[0] < 'A' || tok[0] > 'C' || (tok.size() == 2 && tok[1] != '\''))
      throw ParseError("bad generator token '" + tok + "'");
    letters.push_back({tok[0] - 'A', tok.size() == 2});
  }
  if (letters.empty()) throw ParseError("empty generator word must be written as '1'");
  GeneratorWord w(std::move(letters));
  if (w.to_string() != text) throw ParseError("generator word not in canonical spacing: '" + std::string(text) + "'");
  return w;
}

TreeDiagram GeneratorWord::evaluate(const std::array<TreeDiagram, 3>& generators) const {
  std::array<TreeDiagram, 3> inverses{invert(generators[0]), invert(generators[1]), invert(generators[2])};
  TreeDiagram acc;
  for (const Letter& l : letters_)
    acc = multiply(acc, l.inverse ? inverses[static_cast<std::size_t>(l.symbol)]
                                  : generators[static_cast<std::size_t>(l.symbol)]);
  return acc;
}

const std::array<BranchPair, 5>& suffice_pairs() {
  static const std::array<BranchPair, 5> pairs{{{Word("00"), Word("0")},
                                                {Word("1"), Word("11")},
                                                {Word("01"), Word("10")},
                                                {Word("010"), Word("10")},
                                                {Word("011"), Word("10")}}};
  return pairs;
}

bool SufficeResult::complete() const {
  for (const auto& r : realized_by)
    if (!r) return false;
  return true;
}

SufficeResult suffice_check(const std::vector<SufficeEntry>& elems) {
  SufficeResult result;
  for (std::size_t k = 0; k < 5; ++k) {
    const BranchPair& target = suffice_pairs()[k];
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (has_pair_of_branches(elems[i].element, target.from, target.to)) {
        result.realized_by[k] = i;
        break;
      }
    }
  }
  return result;
}

std::optional<Dyadic> slope_break_cert(const TreeDiagram& element) {
  for (const Dyadic& a : fixed_dyadic_points(element)) {
    if (a <= Dyadic(0) || a >= Dyadic(1)) continue;
    Slopes s = slopes_at(element, a);
    if (s.continuous && s.left == 0 && s.right == 1) return a;
  }
  return std::nullopt;
}

GenerationCertificate invariable_generation_cert(const TreeDiagram& h, const TreeDiagram& g) {
  if (h.group_class() != GroupClass::F || g.group_class() != GroupClass::F)
    throw CertificationError("conjugators must lie in F");
  GenerationCertificate c;
  c.h = reduce(h);
  c.g = reduce(g);
  c.generators = {x0(), conjugate(x1(), c.h), conjugate(x0x1(), c.g)};

  for (std::size_t i = 0; i < 3; ++i) c.images[i] = abelianization(c.generators[i]);
  auto surj = abelian_surjectivity({c.images.begin(), c.images.end()});
  if (!surj) throw CertificationError("condition H[F,F]=F: abelian images do not generate Z^2");
  c.surjectivity = *surj;

  c.slope_break_index = 1;
  c.alpha = evaluate(c.h, Dyadic::pow2(-1));
  const TreeDiagram& b = c.generators[1];
  if (evaluate(b, c.alpha) != c.alpha || slopes_at(b, c.alpha) != Slopes{0, 1, true})
    throw CertificationError("condition slope-break: x1^h does not break at h(1/2)");

  ConjWitness w = conj_witness(c.g);
  c.exponents = w.exponents;
  c.m = w.m;
  c.n = w.n;
  auto [h1, h2] = closure_witnesses(w);
  long k = w.exponents.a + w.exponents.c;
  std::vector<SufficeEntry> entries{
      {c.generators[0], GeneratorWord().append(0, 1)},
      {h1, GeneratorWord().append(0, -(w.m - 1)).append(2, k).append(0, -(w.n - 1))},
      {h2, GeneratorWord().append(0, -(w.m - 1)).append(2, k).append(0, -w.n)},
  };
  SufficeResult sr = suffice_check(entries);
  if (!sr.complete()) throw CertificationError("condition Cl(H)=F: a required branch pair is not realized");
  for (std::size_t i = 0; i < 5; ++i) {
    const SufficeEntry& e = entries[*sr.realized_by[i]];
    c.closure[i] = {suffice_pairs()[i], e.element, e.word};
  }
  return c;
}

std::pair<TreeDiagram, TreeDiagram> random_conjugators(std::uint64_t seed, std::size_t index,
                                                       std::size_t max_leaves) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  Rng rng(seq);
  TreeDiagram h = random_element(GroupClass::F, max_leaves, rng);
  TreeDiagram g = random_element(GroupClass::F, max_leaves, rng);
  return {h, g};
}

GenerationCertificate random_generation_cert(std::uint64_t seed, std::size_t index, std::size_t max_leaves) {
  auto [h, g] = random_conjugators(seed, index, max_leaves);
  GenerationCertificate c = invariable_generation_cert(h, g);
  c.seed = seed;
  c.sample_index = index;
  c.max_leaves = max_leaves;
  return c;
}

Verdict verify_generation_certificate(const GenerationCertificate& c) {
  try {
    if (c.h.group_class() != GroupClass::F || c.g.group_class() != GroupClass::F)
      return Verdict::fail("conjugators: not in F");
    if (!equal(c.generators[0], x0())) return Verdict::fail("generator A: not x0");
    if (!equal(c.generators[1], conjugate(x1(), c.h))) return Verdict::fail("generator B: not x1^h");
    if (!equal(c.generators[2], conjugate(x0x1(), c.g))) return Verdict::fail("generator C: not (x0 x1)^g");

    // H[F,F] = F.
    for (std::size_t i = 0; i < 3; ++i)
      if (abelianization(c.generators[i]) != c.images[i])
        return Verdict::fail("abelian image " + std::to_string(i) + ": mismatch");
    if (c.surjectivity.unit_e0.size() != 3 || c.surjectivity.unit_e1.size() != 3)
      return Verdict::fail("surjectivity witness: wrong arity");
    for (int unit = 0; unit < 2; ++unit) {
      const auto& coeff = unit == 0 ? c.surjectivity.unit_e0 : c.surjectivity.unit_e1;
      long s0 = 0, s1 = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        s0 += coeff[i] * c.images[i].e0;
        s1 += coeff[i] * c.images[i].e1;
      }
      if (s0 != (unit == 0 ? 1 : 0) || s1 != (unit == 0 ? 0 : 1))
        return Verdict::fail("surjectivity witness: combination does not reach a unit vector");
    }

    // Slope break.
    if (c.slope_break_index > 2) return Verdict::fail("slope break: bad element index");
    const TreeDiagram& s = c.generators[c.slope_break_index];
    if (c.alpha <= Dyadic(0) || c.alpha >= Dyadic(1)) return Verdict::fail("slope break: alpha not in (0,1)");
    if (evaluate(s, c.alpha) != c.alpha) return Verdict::fail("slope break: alpha is not fixed");
    if (slopes_at(s, c.alpha) != Slopes{0, 1, true}) return Verdict::fail("slope break: slopes at alpha are not (1,2)");

    // Cl(H) = F.
    for (std::size_t i = 0; i < 5; ++i) {
      const ClosureClaim& cl = c.closure[i];
      if (cl.pair != suffice_pairs()[i]) return Verdict::fail("closure pair " + std::to_string(i + 1) + ": wrong pair");
      if (!equal(cl.word.evaluate(c.generators), cl.element))
        return Verdict::fail("closure pair " + std::to_string(i + 1) + ": provenance word does not give the element");
      if (!has_pair_of_branches(cl.element, cl.pair.from, cl.pair.to))
        return Verdict::fail("closure pair " + std::to_string(i + 1) + ": element lacks the branch pair");
    }

    // Recorded exponents and the canonical construction.
    EndpointExponents e = endpoint_exponents(c.g);
    if (e != c.exponents || c.m != e.b || c.n != e.c + e.d + 1)
      return Verdict::fail("endpoint exponents: mismatch");
    if (c.seed.has_value() != c.sample_index.has_value() || c.seed.has_value() != c.max_leaves.has_value())
      return Verdict::fail("seed metadata: incomplete");
    if (c.seed) {
      auto [h, g] = random_conjugators(*c.seed, *c.sample_index, *c.max_leaves);
      if (!equal(h, c.h) || !equal(g, c.g)) return Verdict::fail("seed metadata: conjugators do not match the seed");
    }
    GenerationCertificate canon = invariable_generation_cert(c.h, c.g);
    canon.seed = c.seed;
    canon.sample_index = c.sample_index;
    canon.max_leaves = c.max_leaves;
    if (!(canon == c)) return Verdict::fail("canonical form: certificate differs from the canonical construction");
  } catch (const std::exception& ex) {
    return Verdict::fail(std::string("exception: ") + ex.what());
  }
  return {};
}

}  // namespace thompson
