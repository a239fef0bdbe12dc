// Generation certificates for Thompson's group F.
//
// For conjugators h, g in F the set {x0, x1^h, (x0 x1)^g} generates F. A
// certificate records exact evidence for the three premises of the
// generation criterion for subgroups of F:
//   1. the closure of H is F, via five branch pairs realized inside H;
//   2. H[F,F] = F, via the abelian images generating Z^2;
//   3. some element of H fixes a dyadic alpha in (0,1) with slope 1 on the
//      left and slope 2 on the right.
// The criterion itself is taken as a theorem; only its premises are checked.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thompson/diagram.hpp"

namespace thompson {

/// Base-2 slope exponents at 0+ and at 1-; a homomorphism F -> Z^2.
struct AbelianImage {
  long e0 = 0;
  long e1 = 0;
  bool operator==(const AbelianImage&) const = default;
};

AbelianImage abelianization(const TreeDiagram& g);

/// Integer coefficients over the input images reaching (1,0) and (0,1).
struct SurjectivityWitness {
  std::vector<long> unit_e0;
  std::vector<long> unit_e1;
  bool operator==(const SurjectivityWitness&) const = default;
};

/// The witness when the images generate Z^2, nullopt otherwise.
std::optional<SurjectivityWitness> abelian_surjectivity(const std::vector<AbelianImage>& images);

/// Branch pairs 0^a -> 0^b and 1^c -> 1^d of an element of F.
struct EndpointExponents {
  long a = 1, b = 1, c = 1, d = 1;
  bool operator==(const EndpointExponents&) const = default;
};

EndpointExponents endpoint_exponents(const TreeDiagram& g);

/// f = (h^(a+c))^g with h = x0 x1; f has 0^m 10 -> 1^n 0 and 0^m 11 -> 1^(n+1) 0.
struct ConjWitness {
  TreeDiagram g;
  TreeDiagram f;
  EndpointExponents exponents;
  long m = 0;
  long n = 0;
};

/// Throws std::invalid_argument for g outside F and std::logic_error if the
/// computed f fails its branch-pair postcondition.
ConjWitness conj_witness(const TreeDiagram& g);

/// h1 = x0^-(m-1) f x0^-(n-1) with 010 -> 10 and h2 = x0^-(m-1) f x0^-n with 011 -> 10.
std::pair<TreeDiagram, TreeDiagram> closure_witnesses(const ConjWitness& w);

/// A word over A = x0, B = x1^h, C = (x0 x1)^g and their inverses.
class GeneratorWord {
 public:
  struct Letter {
    int symbol;  // 0 = A, 1 = B, 2 = C
    bool inverse;
    bool operator==(const Letter&) const = default;
  };

  GeneratorWord() = default;
  explicit GeneratorWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  /// symbol^exponent appended (exponent may be negative or zero).
  GeneratorWord& append(int symbol, long exponent);

  const std::vector<Letter>& letters() const { return letters_; }
  /// Space-separated tokens such as "A' C C"; the empty word is "1".
  std::string to_string() const;
  static GeneratorWord parse(std::string_view text);

  TreeDiagram evaluate(const std::array<TreeDiagram, 3>& generators) const;

  bool operator==(const GeneratorWord&) const = default;

 private:
  std::vector<Letter> letters_;
};

/// The five branch pairs whose joint realization forces Cl(H) = F.
const std::array<BranchPair, 5>& suffice_pairs();

struct SufficeEntry {
  TreeDiagram element;
  GeneratorWord word;
};

struct SufficeResult {
  /// Index into the input list realizing each of the five pairs.
  std::array<std::optional<std::size_t>, 5> realized_by;
  bool complete() const;
};

/// A false result is inconclusive, not a proof of non-generation.
SufficeResult suffice_check(const std::vector<SufficeEntry>& elems);

/// First fixed dyadic alpha in (0,1) with one-sided slopes (1, 2).
std::optional<Dyadic> slope_break_cert(const TreeDiagram& element);

struct ClosureClaim {
  BranchPair pair;
  TreeDiagram element;
  GeneratorWord word;
  bool operator==(const ClosureClaim&) const = default;
};

struct GenerationCertificate {
  TreeDiagram h;  // conjugator of x1
  TreeDiagram g;  // conjugator of x0 x1
  std::array<TreeDiagram, 3> generators;  // x0, x1^h, (x0 x1)^g
  std::array<AbelianImage, 3> images;
  SurjectivityWitness surjectivity;
  std::size_t slope_break_index = 1;
  Dyadic alpha;
  EndpointExponents exponents;  // of g
  long m = 0;
  long n = 0;
  std::array<ClosureClaim, 5> closure;
  // Present when (h, g) was drawn by random_element(F, max_leaves) pairs.
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sample_index;
  std::optional<std::size_t> max_leaves;

  bool operator==(const GenerationCertificate&) const = default;
};

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws CertificationError naming the failed condition.
GenerationCertificate invariable_generation_cert(const TreeDiagram& h, const TreeDiagram& g);

/// (h, g) for the index-th pair of a seeded random suite.
std::pair<TreeDiagram, TreeDiagram> random_conjugators(std::uint64_t seed, std::size_t index,
                                                       std::size_t max_leaves);
GenerationCertificate random_generation_cert(std::uint64_t seed, std::size_t index, std::size_t max_leaves);

struct Verdict {
  bool ok = true;
  std::string violated;  // first failed clause when !ok
  explicit operator bool() const { return ok; }
  static Verdict fail(std::string clause) { return {false, std::move(clause)}; }
};

Verdict verify_generation_certificate(const GenerationCertificate& cert);

/// x0 x1 = {00 -> 0, 010 -> 10, 011 -> 110, 1 -> 111}.
TreeDiagram x0x1();

}  // namespace thompson
