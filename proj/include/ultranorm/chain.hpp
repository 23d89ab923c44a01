#pragma once

// Totally ordered carriers B for the convex base of X = B x G.
//
// Every chain belongs to a class whose well-orderedness is known:
//   finite:<n>          {0 < 1 < ... < n-1}                        well ordered
//   ordinal[:<cnf>]     ordinals below the bound (below eps_0)    well ordered
//   qinterval01         rationals in (0, 1]                       not well ordered
//   descending_omega    b_1 > b_2 > b_3 > ...                      not well ordered
//   lex(<c1>,<c2>)      lexicographic product, c1 major           well ordered iff both are
//
// A "no" verdict always comes with a generator of strictly decreasing elements.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ultranorm/error.hpp"
#include "ultranorm/field.hpp"
#include "ultranorm/ordinal.hpp"
#include "ultranorm/random.hpp"

namespace ultranorm {

enum class ChainKind { Finite, OrdinalCNF, RationalInterval01, DescendingOmega, LexProduct };

inline const char* to_string(ChainKind k) {
  switch (k) {
    case ChainKind::Finite: return "finite";
    case ChainKind::OrdinalCNF: return "ordinal";
    case ChainKind::RationalInterval01: return "qinterval01";
    case ChainKind::DescendingOmega: return "descending_omega";
    case ChainKind::LexProduct: return "lex";
  }
  return "?";
}

enum class WellOrdered { Yes, No };

inline const char* to_string(WellOrdered w) { return w == WellOrdered::Yes ? "YES" : "NO"; }

class ChainElement {
 public:
  static ChainElement finite(std::uint64_t index) { return ChainElement(ChainKind::Finite, index); }
  /// b_k of the descending chain, k >= 1; larger k is smaller.
  static ChainElement descending(std::uint64_t k) { return ChainElement(ChainKind::DescendingOmega, k); }
  static ChainElement ordinal(Ordinal o) {
    ChainElement e(ChainKind::OrdinalCNF, 0);
    e.ordinal_ = std::move(o);
    return e;
  }
  static ChainElement rational(Scalar q) {
    ChainElement e(ChainKind::RationalInterval01, 0);
    e.rational_ = std::move(q);
    return e;
  }
  static ChainElement lex(ChainElement major, ChainElement minor) {
    ChainElement e(ChainKind::LexProduct, 0);
    e.parts_ = {std::move(major), std::move(minor)};
    return e;
  }

  ChainKind kind() const noexcept { return kind_; }
  std::uint64_t index() const noexcept { return index_; }
  const Ordinal& ordinal_value() const noexcept { return ordinal_; }
  const Scalar& rational_value() const noexcept { return rational_; }
  const ChainElement& major() const { return parts_.at(0); }
  const ChainElement& minor() const { return parts_.at(1); }

  /// Literal form used after "b@" in descriptor files.
  std::string to_string() const {
    switch (kind_) {
      case ChainKind::Finite:
      case ChainKind::DescendingOmega: return std::to_string(index_);
      case ChainKind::OrdinalCNF: return ordinal_.to_string();
      case ChainKind::RationalInterval01: return rational_.pretty();
      case ChainKind::LexProduct: return "[" + parts_[0].to_string() + "|" + parts_[1].to_string() + "]";
    }
    return "?";
  }

  friend std::strong_ordering operator<=>(const ChainElement& a, const ChainElement& b);
  friend bool operator==(const ChainElement& a, const ChainElement& b) { return (a <=> b) == 0; }

 private:
  ChainElement(ChainKind kind, std::uint64_t index) : kind_(kind), index_(index) {}

  ChainKind kind_;
  std::uint64_t index_ = 0;
  Ordinal ordinal_;
  Scalar rational_;
  std::vector<ChainElement> parts_;
};

/// Order of the chain the elements come from. Elements of different chain
/// classes are incomparable and raise WrongChain.
inline std::strong_ordering operator<=>(const ChainElement& a, const ChainElement& b) {
  if (a.kind_ != b.kind_)
    throw Error(ErrorKind::WrongChain, std::string("cannot compare ") + to_string(a.kind_) + " element with " +
                                           to_string(b.kind_) + " element");
  switch (a.kind_) {
    case ChainKind::Finite: return a.index_ <=> b.index_;
    case ChainKind::DescendingOmega: return b.index_ <=> a.index_;
    case ChainKind::OrdinalCNF: return a.ordinal_ <=> b.ordinal_;
    case ChainKind::RationalInterval01: return a.rational_ <=> b.rational_;
    case ChainKind::LexProduct:
      if (auto c = a.parts_[0] <=> b.parts_[0]; c != 0) return c;
      return a.parts_[1] <=> b.parts_[1];
  }
  return std::strong_ordering::equal;
}

/// Which part of a chain to look at relative to a point p.
enum class Segment { AtLeast, Above, Below, AtMost };

class Chain {
 public:
  static Chain finite(std::uint64_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "a chain must be non-empty");
    return Chain(Node{ChainKind::Finite, n, std::nullopt, {}});
  }
  /// Ordinals below `bound`; without a bound, all ordinals below eps_0.
  static Chain ordinal(std::optional<Ordinal> bound = std::nullopt) {
    if (bound && bound->is_zero()) throw Error(ErrorKind::InvalidArgument, "a chain must be non-empty");
    return Chain(Node{ChainKind::OrdinalCNF, 0, std::move(bound), {}});
  }
  static Chain rational_interval01() { return Chain(Node{ChainKind::RationalInterval01, 0, std::nullopt, {}}); }
  static Chain descending_omega() { return Chain(Node{ChainKind::DescendingOmega, 0, std::nullopt, {}}); }
  static Chain lex(Chain major, Chain minor) {
    return Chain(Node{ChainKind::LexProduct, 0, std::nullopt, {std::move(major), std::move(minor)}});
  }

  /// Parses the chain descriptor grammar, e.g. "lex(finite:3,qinterval01)".
  static Chain parse(std::string_view text);

  ChainKind kind() const noexcept { return node_->kind; }
  std::uint64_t size() const noexcept { return node_->size; }
  const std::optional<Ordinal>& ordinal_bound() const noexcept { return node_->bound; }
  const Chain& factor(std::size_t i) const { return node_->factors.at(i); }

  std::string descriptor() const {
    switch (kind()) {
      case ChainKind::Finite: return "finite:" + std::to_string(size());
      case ChainKind::OrdinalCNF: return node_->bound ? "ordinal:" + node_->bound->to_string() : "ordinal";
      case ChainKind::RationalInterval01: return "qinterval01";
      case ChainKind::DescendingOmega: return "descending_omega";
      case ChainKind::LexProduct: return "lex(" + factor(0).descriptor() + "," + factor(1).descriptor() + ")";
    }
    return "?";
  }

  bool contains(const ChainElement& e) const {
    if (e.kind() != kind()) return false;
    switch (kind()) {
      case ChainKind::Finite: return e.index() < size();
      case ChainKind::OrdinalCNF: return !node_->bound || e.ordinal_value() < *node_->bound;
      case ChainKind::RationalInterval01: return e.rational_value() > Scalar(0) && e.rational_value() <= Scalar(1);
      case ChainKind::DescendingOmega: return e.index() >= 1;
      case ChainKind::LexProduct: return factor(0).contains(e.major()) && factor(1).contains(e.minor());
    }
    return false;
  }

  void require(const ChainElement& e) const {
    if (!contains(e))
      throw Error(ErrorKind::WrongChain, "element " + e.to_string() + " does not belong to chain " + descriptor());
  }

  std::strong_ordering compare(const ChainElement& a, const ChainElement& b) const {
    require(a);
    require(b);
    return a <=> b;
  }

  WellOrdered is_well_ordered() const {
    switch (kind()) {
      case ChainKind::Finite:
      case ChainKind::OrdinalCNF: return WellOrdered::Yes;
      case ChainKind::RationalInterval01:
      case ChainKind::DescendingOmega: return WellOrdered::No;
      case ChainKind::LexProduct:
        return factor(0).is_well_ordered() == WellOrdered::Yes && factor(1).is_well_ordered() == WellOrdered::Yes
                   ? WellOrdered::Yes
                   : WellOrdered::No;
    }
    return WellOrdered::No;
  }

  /// b_1 > b_2 > ... > b_k. Raises WellOrderedChain when no such sequence exists.
  std::vector<ChainElement> descending_witness(std::size_t k) const {
    if (is_well_ordered() == WellOrdered::Yes)
      throw Error(ErrorKind::WellOrderedChain, "chain " + descriptor() + " is well ordered");
    std::vector<ChainElement> out;
    out.reserve(k);
    switch (kind()) {
      case ChainKind::RationalInterval01: {
        Scalar q(1);
        for (std::size_t i = 0; i < k; ++i) out.push_back(ChainElement::rational(q /= Scalar(2)));
        break;
      }
      case ChainKind::DescendingOmega:
        for (std::size_t i = 1; i <= k; ++i) out.push_back(ChainElement::descending(i));
        break;
      case ChainKind::LexProduct:
        if (factor(0).is_well_ordered() == WellOrdered::No) {
          const ChainElement fixed = factor(1).some_element();
          for (auto& e : factor(0).descending_witness(k)) out.push_back(ChainElement::lex(e, fixed));
        } else {
          const ChainElement fixed = factor(0).some_element();
          for (auto& e : factor(1).descending_witness(k)) out.push_back(ChainElement::lex(fixed, e));
        }
        break;
      default: break;
    }
    return out;
  }

  ChainElement some_element() const {
    switch (kind()) {
      case ChainKind::Finite: return ChainElement::finite(0);
      case ChainKind::OrdinalCNF: return ChainElement::ordinal(Ordinal());
      case ChainKind::RationalInterval01: return ChainElement::rational(Scalar(1));
      case ChainKind::DescendingOmega: return ChainElement::descending(1);
      case ChainKind::LexProduct: return ChainElement::lex(factor(0).some_element(), factor(1).some_element());
    }
    return ChainElement::finite(0);
  }

  ChainElement sample(Rng& rng) const {
    switch (kind()) {
      case ChainKind::Finite:
        return ChainElement::finite(static_cast<std::uint64_t>(uniform_int(rng, 0, static_cast<std::int64_t>(size()) - 1)));
      case ChainKind::OrdinalCNF: {
        static const Ordinal cap = Ordinal::parse("w^(w*2)");
        const Ordinal& top = node_->bound ? *node_->bound : cap;
        return ChainElement::ordinal(*top.sample_below(rng));
      }
      case ChainKind::RationalInterval01: {
        const std::int64_t den = uniform_int(rng, 1, 64);
        return ChainElement::rational(Scalar(BigInt(uniform_int(rng, 1, den)), BigInt(den)));
      }
      case ChainKind::DescendingOmega:
        return ChainElement::descending(static_cast<std::uint64_t>(uniform_int(rng, 1, 1000)));
      case ChainKind::LexProduct: return ChainElement::lex(factor(0).sample(rng), factor(1).sample(rng));
    }
    return some_element();
  }

  /// A random element strictly below e, or nullopt when e is the least element.
  std::optional<ChainElement> sample_below(const ChainElement& e, Rng& rng) const {
    require(e);
    switch (kind()) {
      case ChainKind::Finite:
        if (e.index() == 0) return std::nullopt;
        return ChainElement::finite(static_cast<std::uint64_t>(uniform_int(rng, 0, static_cast<std::int64_t>(e.index()) - 1)));
      case ChainKind::OrdinalCNF: {
        auto o = e.ordinal_value().sample_below(rng);
        if (!o) return std::nullopt;
        return ChainElement::ordinal(std::move(*o));
      }
      case ChainKind::RationalInterval01: {
        const std::int64_t den = uniform_int(rng, 2, 16);
        return ChainElement::rational(e.rational_value() * Scalar(BigInt(uniform_int(rng, 1, den - 1)), BigInt(den)));
      }
      case ChainKind::DescendingOmega:
        return ChainElement::descending(e.index() + static_cast<std::uint64_t>(uniform_int(rng, 1, 8)));
      case ChainKind::LexProduct: {
        auto lower_minor = factor(1).sample_below(e.minor(), rng);
        auto lower_major = factor(0).sample_below(e.major(), rng);
        if (lower_major && (!lower_minor || coin(rng)))
          return ChainElement::lex(std::move(*lower_major), factor(1).sample(rng));
        if (lower_minor) return ChainElement::lex(e.major(), std::move(*lower_minor));
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  /// Whether the segment of this chain on the given side of p is empty.
  bool segment_empty(const ChainElement& p, Segment side) const {
    require(p);
    switch (side) {
      case Segment::AtLeast:
      case Segment::AtMost: return false;
      default: break;
    }
    const bool above = side == Segment::Above;
    switch (kind()) {
      case ChainKind::Finite: return above ? p.index() + 1 == size() : p.index() == 0;
      case ChainKind::OrdinalCNF:
        if (!above) return p.ordinal_value().is_zero();
        // p is the last element iff p + 1 = bound.
        return node_->bound && node_->bound->is_successor() && is_predecessor(p.ordinal_value(), *node_->bound);
      case ChainKind::RationalInterval01: return above && p.rational_value() == Scalar(1);
      case ChainKind::DescendingOmega: return above && p.index() == 1;
      case ChainKind::LexProduct:
        return factor(0).segment_empty(p.major(), side) && factor(1).segment_empty(p.minor(), side);
    }
    return false;
  }

  /// Well-orderedness of the segment of this chain on the given side of p.
  /// Empty segments count as well ordered.
  WellOrdered segment_well_ordered(const ChainElement& p, Segment side) const {
    require(p);
    if (segment_empty(p, side)) return WellOrdered::Yes;
    auto yes = [](bool b) { return b ? WellOrdered::Yes : WellOrdered::No; };
    switch (kind()) {
      case ChainKind::Finite:
      case ChainKind::OrdinalCNF: return WellOrdered::Yes;
      case ChainKind::RationalInterval01:
        // [q, 1] is well ordered only when it is the single point {1}.
        return yes(side == Segment::AtLeast && p.rational_value() == Scalar(1));
      case ChainKind::DescendingOmega:
        // Above b_k lie only b_1..b_{k-1}; below it the infinite tail.
        return yes(side == Segment::AtLeast || side == Segment::Above);
      case ChainKind::LexProduct: {
        const Chain& a = factor(0);
        const Chain& b = factor(1);
        const bool up = side == Segment::AtLeast || side == Segment::Above;
        // {p.major} x (segment of b) followed or preceded by (strict segment of a) x b.
        const Segment strict = up ? Segment::Above : Segment::Below;
        const bool inner = b.segment_well_ordered(p.minor(), side) == WellOrdered::Yes;
        const bool outer = a.segment_empty(p.major(), strict) ||
                           (a.segment_well_ordered(p.major(), strict) == WellOrdered::Yes &&
                            b.is_well_ordered() == WellOrdered::Yes);
        return yes(inner && outer);
      }
    }
    return WellOrdered::No;
  }

  friend bool operator==(const Chain& a, const Chain& b) { return a.descriptor() == b.descriptor(); }

 private:
  struct Node {
    ChainKind kind;
    std::uint64_t size;
    std::optional<Ordinal> bound;
    std::vector<Chain> factors;
  };

  explicit Chain(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

  // Whether a + 1 = b for successor ordinal b.
  static bool is_predecessor(const Ordinal& a, const Ordinal& b) {
    auto terms = b.terms();
    if (terms.back().coefficient == 1)
      terms.pop_back();
    else
      --terms.back().coefficient;
    return a == Ordinal::from_terms(std::move(terms));
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

inline std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits "x,y" at the top-level comma (ignoring commas nested in parentheses).
inline std::pair<std::string_view, std::string_view> split_top_level(std::string_view s, char sep, char open,
                                                                     char close) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == open) ++depth;
    else if (s[i] == close) --depth;
    else if (s[i] == sep && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
  }
  throw Error(ErrorKind::InvalidArgument, "expected '" + std::string(1, sep) + "' in '" + std::string(s) + "'");
}

inline std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  s = trim_view(s);
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty " + std::string(what));
  std::uint64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(ErrorKind::InvalidArgument, "bad " + std::string(what) + " '" + std::string(s) + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace detail

inline Chain Chain::parse(std::string_view text) {
  text = detail::trim_view(text);
  if (text.starts_with("finite:")) return finite(detail::parse_u64(text.substr(7), "chain size"));
  if (text == "ordinal") return ordinal();
  if (text.starts_with("ordinal:")) {
    auto body = detail::trim_view(text.substr(8));
    if (body.size() >= 2 && body.front() == '"' && body.back() == '"') body = body.substr(1, body.size() - 2);
    return ordinal(Ordinal::parse(body));
  }
  if (text == "qinterval01") return rational_interval01();
  if (text == "descending_omega") return descending_omega();
  if (text.starts_with("lex(") && text.ends_with(")")) {
    auto [a, b] = detail::split_top_level(text.substr(4, text.size() - 5), ',', '(', ')');
    return lex(parse(a), parse(b));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown chain descriptor '" + std::string(text) + "'");
}

/// Reads a chain element literal (without the "b@" prefix) in the context of chain c.
inline ChainElement parse_chain_element(const Chain& c, std::string_view text) {
  text = detail::trim_view(text);
  ChainElement e = [&] {
    switch (c.kind()) {
      case ChainKind::Finite: return ChainElement::finite(detail::parse_u64(text, "finite chain index"));
      case ChainKind::DescendingOmega: return ChainElement::descending(detail::parse_u64(text, "descending index"));
      case ChainKind::OrdinalCNF: return ChainElement::ordinal(Ordinal::parse(text));
      case ChainKind::RationalInterval01: return ChainElement::rational(Scalar::parse(text));
      case ChainKind::LexProduct: {
        if (!text.starts_with("[") || !text.ends_with("]"))
          throw Error(ErrorKind::InvalidArgument, "lex element must look like [x|y], got '" + std::string(text) + "'");
        auto [a, b] = detail::split_top_level(text.substr(1, text.size() - 2), '|', '[', ']');
        return ChainElement::lex(parse_chain_element(c.factor(0), a), parse_chain_element(c.factor(1), b));
      }
    }
    throw Error(ErrorKind::InvalidArgument, "unsupported chain");
  }();
  c.require(e);
  return e;
}

}  // namespace ultranorm
