#include "thompson/dyadic.hpp"

#include <charconv>

namespace thompson {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + what
                                  : what),
      line_(line),
      column_(column) {}

Dyadic::Dyadic(mpz_class numerator, unsigned exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  if (exponent_ == 0) return;
  mp_bitcnt_t zeros = mpz_scan1(numerator_.get_mpz_t(), 0);
  auto strip = static_cast<unsigned>(std::min<mp_bitcnt_t>(zeros, exponent_));
  if (strip > 0) {
    mpz_tdiv_q_2exp(numerator_.get_mpz_t(), numerator_.get_mpz_t(), strip);
    exponent_ -= strip;
  }
}

Dyadic Dyadic::pow2(long k) {
  Dyadic d;
  if (k >= 0) {
    mpz_ui_pow_ui(d.numerator_.get_mpz_t(), 2, static_cast<unsigned long>(k));
  } else {
    d.numerator_ = 1;
    d.exponent_ = static_cast<unsigned>(-k);
  }
  return d;
}

namespace {

// Brings a and b to the common exponent max(ea, eb).
void align(const Dyadic& a, const Dyadic& b, mpz_class& na, mpz_class& nb, unsigned& e) {
  e = std::max(a.exponent(), b.exponent());
  mpz_mul_2exp(na.get_mpz_t(), a.numerator().get_mpz_t(), e - a.exponent());
  mpz_mul_2exp(nb.get_mpz_t(), b.numerator().get_mpz_t(), e - b.exponent());
}

}  // namespace

Dyadic Dyadic::operator+(const Dyadic& o) const {
  mpz_class na, nb;
  unsigned e;
  align(*this, o, na, nb, e);
  return Dyadic(na + nb, e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
  mpz_class na, nb;
  unsigned e;
  align(*this, o, na, nb, e);
  return Dyadic(na - nb, e);
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
  return Dyadic(numerator_ * o.numerator_, exponent_ + o.exponent_);
}

Dyadic Dyadic::operator-() const {
  Dyadic d = *this;
  d.numerator_ = -d.numerator_;
  return d;
}

Dyadic Dyadic::scaled(long k) const {
  if (numerator_ == 0) return *this;
  Dyadic d = *this;
  if (k >= 0) {
    auto shift = static_cast<unsigned long>(k);
    if (shift <= d.exponent_) {
      d.exponent_ -= static_cast<unsigned>(shift);
    } else {
      mpz_mul_2exp(d.numerator_.get_mpz_t(), d.numerator_.get_mpz_t(), shift - d.exponent_);
      d.exponent_ = 0;
    }
  } else {
    d.exponent_ += static_cast<unsigned>(-k);
  }
  return d;
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& o) const {
  mpz_class na, nb;
  unsigned e;
  align(*this, o, na, nb, e);
  int c = cmp(na, nb);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

mpz_class Dyadic::floor() const {
  mpz_class q;
  mpz_fdiv_q_2exp(q.get_mpz_t(), numerator_.get_mpz_t(), exponent_);
  return q;
}

Dyadic Dyadic::fractional() const {
  mpz_class r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), numerator_.get_mpz_t(), exponent_);
  return Dyadic(r, exponent_);
}

std::string Dyadic::to_string() const {
  return numerator_.get_str() + "/2^" + std::to_string(exponent_);
}

Dyadic Dyadic::parse(std::string_view text) {
  auto slash = text.find("/2^");
  if (slash == std::string_view::npos || slash == 0)
    throw ParseError("dyadic must have the form p/2^q: '" + std::string(text) + "'");
  std::string_view num = text.substr(0, slash);
  std::string_view exp = text.substr(slash + 3);
  std::size_t digits_from = (num[0] == '-') ? 1 : 0;
  if (digits_from == num.size() || exp.empty())
    throw ParseError("dyadic must have the form p/2^q: '" + std::string(text) + "'");
  for (std::size_t i = digits_from; i < num.size(); ++i)
    if (num[i] < '0' || num[i] > '9')
      throw ParseError("bad numerator in dyadic '" + std::string(text) + "'");
  if (num.size() - digits_from > 1 && num[digits_from] == '0')
    throw ParseError("leading zero in dyadic '" + std::string(text) + "'");
  unsigned e = 0;
  auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), e);
  if (ec != std::errc{} || ptr != exp.data() + exp.size() || (exp.size() > 1 && exp[0] == '0'))
    throw ParseError("bad exponent in dyadic '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  if (num == "-0") throw ParseError("negative zero in dyadic '" + std::string(text) + "'");
  Dyadic d;
  d.numerator_ = n;
  d.exponent_ = e;
  if ((e > 0 && mpz_even_p(n.get_mpz_t())) || (n == 0 && e != 0))
    throw ParseError("dyadic not in lowest terms: '" + std::string(text) + "'");
  return d;
}

std::size_t Dyadic::hash() const {
  std::size_t h = std::hash<std::string>{}(numerator_.get_str(16));
  return h ^ (static_cast<std::size_t>(exponent_) * 0x9e3779b97f4a7c15ULL);
}

Word::Word(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_)
    if (c != '0' && c != '1') throw ParseError("binary word may only contain 0 and 1: '" + bits_ + "'");
}

Word Word::repeat(char bit, std::size_t count) { return Word(std::string(count, bit)); }

Dyadic Word::left() const {
  if (bits_.empty()) return Dyadic(0);
  return Dyadic(mpz_class(bits_, 2), static_cast<unsigned>(bits_.size()));
}

Word Word::parse(std::string_view text) {
  if (text == "e") return Word();
  if (text.empty()) throw ParseError("empty word must be written as 'e'");
  return Word(std::string(text));
}

std::optional<Word> word_from_endpoints(const Dyadic& left, const Dyadic& right) {
  Dyadic len = right - left;
  if (len.sign() <= 0 || left.sign() < 0 || right > Dyadic(1)) return std::nullopt;
  // len must be exactly 2^-k with k >= 0.
  if (len.numerator() != 1) return std::nullopt;
  unsigned k = len.exponent();
  if (left.exponent() > k) return std::nullopt;
  mpz_class index = left.numerator();
  mpz_mul_2exp(index.get_mpz_t(), index.get_mpz_t(), k - left.exponent());
  if (k == 0) return Word();
  std::string bits = index.get_str(2);
  if (index == 0) bits.clear();
  return Word(std::string(k - bits.size(), '0') + bits);
}

}  // namespace thompson
