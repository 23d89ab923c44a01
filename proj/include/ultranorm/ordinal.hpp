#pragma once

// Ordinals below epsilon_0 in Cantor normal form:
//   w^e1*c1 + w^e2*c2 + ... with e1 > e2 > ... and every ci >= 1.
// The empty sum is 0. Exponents are themselves ordinals in the same form.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ultranorm/error.hpp"
#include "ultranorm/random.hpp"

namespace ultranorm {

struct OrdinalTerm;

class Ordinal {
 public:
  Ordinal() = default;

  static Ordinal natural(std::uint64_t n);
  static Ordinal omega();
  /// w^exponent * coefficient
  static Ordinal omega_power(const Ordinal& exponent, std::uint64_t coefficient = 1);
  /// Validates strictly decreasing exponents and positive coefficients.
  static Ordinal from_terms(std::vector<OrdinalTerm> terms);

  static Ordinal parse(std::string_view text);

  const std::vector<OrdinalTerm>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_finite() const;
  bool is_successor() const;

  std::string to_string() const;

  /// A random ordinal strictly below *this, or nullopt when *this is 0.
  std::optional<Ordinal> sample_below(Rng& rng) const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
  Ordinal exponent;
  std::uint64_t coefficient = 1;
};

inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms_[i].exponent <=> b.terms_[i].exponent; c != 0) return c;
    if (auto c = a.terms_[i].coefficient <=> b.terms_[i].coefficient; c != 0) return c;
  }
  return a.terms_.size() <=> b.terms_.size();
}

inline bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

inline Ordinal Ordinal::natural(std::uint64_t n) {
  Ordinal o;
  if (n) o.terms_.push_back({Ordinal(), n});
  return o;
}

inline Ordinal Ordinal::omega() { return omega_power(natural(1)); }

inline Ordinal Ordinal::omega_power(const Ordinal& exponent, std::uint64_t coefficient) {
  if (coefficient == 0) return Ordinal();
  Ordinal o;
  o.terms_.push_back({exponent, coefficient});
  return o;
}

inline Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0)
      throw Error(ErrorKind::InvalidArgument, "Cantor normal form coefficients must be >= 1");
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
      throw Error(ErrorKind::InvalidArgument, "Cantor normal form exponents must strictly decrease");
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

inline bool Ordinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()); }

inline bool Ordinal::is_successor() const { return !terms_.empty() && terms_.back().exponent.is_zero(); }

inline std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += "+";
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += "w";
    if (!(t.exponent == natural(1))) {
      const bool atomic = t.exponent.is_finite() || t.exponent == omega();
      out += "^";
      out += atomic ? t.exponent.to_string() : "(" + t.exponent.to_string() + ")";
    }
    if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

namespace detail {

// Recursive-descent reader for
//   sum  := term ('+' term)*
//   term := nat | 'w' ('^' exp)? ('*' nat)?
//   exp  := nat | 'w' ('^' exp)? | '(' sum ')'
class OrdinalReader {
 public:
  explicit OrdinalReader(std::string_view text) : text_(text) {}

  Ordinal read() {
    Ordinal o = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return o;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::InvalidArgument,
                "bad ordinal '" + std::string(text_) + "' at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::uint64_t nat() {
    if (!at_digit()) fail("expected a natural number");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  Ordinal sum() {
    std::vector<OrdinalTerm> terms;
    do {
      OrdinalTerm t = term();
      if (t.coefficient != 0) terms.push_back(std::move(t));
    } while (accept('+'));
    try {
      return Ordinal::from_terms(std::move(terms));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  OrdinalTerm term() {
    if (at_digit()) return {Ordinal(), nat()};
    if (!accept('w')) fail("expected 'w' or a natural number");
    Ordinal e = Ordinal::natural(1);
    if (accept('^')) e = exponent();
    std::uint64_t c = 1;
    if (accept('*')) c = nat();
    return {e, c};
  }

  Ordinal exponent() {
    if (at_digit()) return Ordinal::natural(nat());
    if (accept('(')) {
      Ordinal o = sum();
      if (!accept(')')) fail("expected ')'");
      return o;
    }
    if (!accept('w')) fail("expected exponent");
    Ordinal e = Ordinal::natural(1);
    if (accept('^')) e = exponent();
    return Ordinal::omega_power(e);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Ordinal Ordinal::parse(std::string_view text) { return detail::OrdinalReader(text).read(); }

namespace detail {

// Random ordinal strictly below w^exponent; appended to `out` as CNF terms.
inline void append_random_tail_below_power(const Ordinal& exponent, Rng& rng, std::vector<OrdinalTerm>& out,
                                           int budget) {
  auto e = exponent.sample_below(rng);
  while (e && budget-- > 0) {
    out.push_back({*e, static_cast<std::uint64_t>(uniform_int(rng, 1, 4))});
    if (!coin(rng)) return;
    e = e->sample_below(rng);
  }
}

}  // namespace detail

// Keeps a random prefix of the CNF, lowers the next term and appends a random
// tail of smaller exponents. Always terminates because exponents shrink.
inline std::optional<Ordinal> Ordinal::sample_below(Rng& rng) const {
  if (terms_.empty()) return std::nullopt;
  const auto cut = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(terms_.size()) - 1));
  std::vector<OrdinalTerm> out(terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(cut));
  const OrdinalTerm& t = terms_[cut];
  if (t.coefficient > 1 && coin(rng))
    out.push_back({t.exponent, static_cast<std::uint64_t>(uniform_int(rng, 1, static_cast<std::int64_t>(t.coefficient) - 1))});
  if (coin(rng, 0.75)) detail::append_random_tail_below_power(t.exponent, rng, out, 3);
  return from_terms(std::move(out));
}

}  // namespace ultranorm
