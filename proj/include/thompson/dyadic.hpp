// Exact dyadic rationals and finite binary words.
//
// A Dyadic is numerator / 2^exponent kept in lowest terms (exponent == 0 or
// numerator odd). Every operation here is exact; nothing in the library
// touches floating point.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace thompson {

/// Raised for malformed text input (words, dyadics, intervals, tables).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long value) : numerator_(value) {}  // NOLINT(implicit)
  Dyadic(mpz_class numerator, unsigned exponent);

  /// 2^k for any integer k.
  static Dyadic pow2(long k);

  const mpz_class& numerator() const { return numerator_; }
  unsigned exponent() const { return exponent_; }

  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;
  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }

  /// this * 2^k.
  Dyadic scaled(long k) const;

  bool operator==(const Dyadic& o) const {
    return exponent_ == o.exponent_ && numerator_ == o.numerator_;
  }
  std::strong_ordering operator<=>(const Dyadic& o) const;

  int sign() const { return sgn(numerator_); }
  bool is_integer() const { return exponent_ == 0; }
  /// Largest integer <= this.
  mpz_class floor() const;
  /// this - floor(this), in [0, 1).
  Dyadic fractional() const;

  /// Text form "p/2^q" in lowest terms.
  std::string to_string() const;
  /// Accepts exactly "p/2^q" (p optionally negative) in lowest terms.
  static Dyadic parse(std::string_view text);

  std::size_t hash() const;

 private:
  void canonicalize();

  mpz_class numerator_{0};
  unsigned exponent_ = 0;
};

/// A finite word over {0,1}; labels a branch of a binary tree.
class Word {
 public:
  Word() = default;
  /// Throws ParseError unless every character is '0' or '1'.
  explicit Word(std::string bits);

  static Word repeat(char bit, std::size_t count);

  const std::string& bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  char operator[](std::size_t i) const { return bits_[i]; }

  Word child(char bit) const { return Word(bits_ + bit, Unchecked{}); }
  Word operator+(const Word& o) const { return Word(bits_ + o.bits_, Unchecked{}); }
  Word prefix(std::size_t n) const { return Word(bits_.substr(0, n), Unchecked{}); }
  /// The word with the first n letters removed.
  Word drop(std::size_t n) const { return Word(bits_.substr(n), Unchecked{}); }

  bool is_prefix_of(const Word& w) const {
    return bits_.size() <= w.bits_.size() && w.bits_.compare(0, bits_.size(), bits_) == 0;
  }
  bool is_proper_prefix_of(const Word& w) const {
    return bits_.size() < w.bits_.size() && is_prefix_of(w);
  }
  bool comparable(const Word& w) const { return is_prefix_of(w) || w.is_prefix_of(*this); }

  /// The dyadic .u (left endpoint of the word interval).
  Dyadic left() const;
  /// 2^(-|u|).
  Dyadic length() const { return Dyadic::pow2(-static_cast<long>(bits_.size())); }
  Dyadic right() const { return left() + length(); }

  /// Lexicographic order; on prefix-incomparable words this is left-to-right order.
  auto operator<=>(const Word& o) const = default;

  /// Text form for tables: the bits, or "e" for the empty word.
  std::string to_string() const { return bits_.empty() ? std::string("e") : bits_; }
  static Word parse(std::string_view text);

 private:
  struct Unchecked {};
  Word(std::string bits, Unchecked) : bits_(std::move(bits)) {}
  std::string bits_;
};

/// Recovers u from an aligned dyadic interval [left, left + 2^-k]; nullopt if
/// the pair is not a word interval.
std::optional<Word> word_from_endpoints(const Dyadic& left, const Dyadic& right);

}  // namespace thompson

template <>
struct std::hash<thompson::Dyadic> {
  std::size_t operator()(const thompson::Dyadic& d) const { return d.hash(); }
};

template <>
struct std::hash<thompson::Word> {
  std::size_t operator()(const thompson::Word& w) const {
    return std::hash<std::string>{}(w.bits());
  }
};
