#pragma once

// The G-module X = B x G for cyclic G = <g>.
//
// G acts on the exponent: g^k (b, m) = (b, m + k). The order is exponent-major
// and chain-minor, so X is the ordered union ... < g^-1 B < B < g B < ...
// and every copy B x {m} is convex.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "ultranorm/chain.hpp"
#include "ultranorm/error.hpp"

namespace ultranorm {

/// g^exponent
struct GroupElement {
  std::int64_t exponent = 0;

  friend GroupElement operator*(GroupElement a, GroupElement b) { return {a.exponent + b.exponent}; }
  GroupElement inverse() const { return {-exponent}; }
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

  std::string to_string() const { return "g^" + std::to_string(exponent); }
};

/// A point (b, g^m) of X.
struct XElement {
  ChainElement b;
  std::int64_t m = 0;

  friend std::strong_ordering operator<=>(const XElement& x, const XElement& y) {
    if (auto c = x.m <=> y.m; c != 0) return c;
    return x.b <=> y.b;
  }
  friend bool operator==(const XElement& x, const XElement& y) { return (x <=> y) == 0; }

  /// "(b@<element>, g^<m>)"
  std::string to_string() const { return "(b@" + b.to_string() + ", g^" + std::to_string(m) + ")"; }
};

inline XElement act(GroupElement g, const XElement& x) { return {x.b, x.m + g.exponent}; }

/// A half-open interval [a, g a), or (a, g a] when `upper_closed` is set.
/// Either one meets every orbit exactly once and is convex.
struct BaseInterval {
  XElement a;
  bool upper_closed = false;

  bool contains(const XElement& y) const {
    const XElement ga = act({1}, a);
    return upper_closed ? (a < y && y <= ga) : (a <= y && y < ga);
  }
};

class GModule {
 public:
  explicit GModule(Chain chain) : chain_(std::move(chain)) {}

  const Chain& chain() const noexcept { return chain_; }

  void require(const XElement& x) const { chain_.require(x.b); }

  std::strong_ordering x_compare(const XElement& x, const XElement& y) const {
    require(x);
    require(y);
    return x <=> y;
  }

  /// The unique (rep, k) with rep in [a, g a) and g^k rep = x.
  std::pair<XElement, std::int64_t> canonical_rep(const XElement& x, const XElement& a) const {
    require(x);
    require(a);
    const std::int64_t level = x.b >= a.b ? a.m : a.m + 1;
    return {XElement{x.b, level}, x.m - level};
  }

  /// Representative in the default base B x {0}.
  std::pair<XElement, std::int64_t> canonical_rep(const XElement& x) const {
    require(x);
    return {XElement{x.b, 0}, x.m};
  }

  BaseInterval convex_base_interval(const XElement& a, bool upper_closed = false) const {
    require(a);
    return {a, upper_closed};
  }

  /// max{ g^k : g^k x0 <= x }; attained because G is discrete.
  GroupElement phi(const XElement& x, const XElement& x0) const {
    require(x);
    require(x0);
    return {x0.b <= x.b ? x.m - x0.m : x.m - x0.m - 1};
  }

  bool orbit_equivalent(const XElement& x, const XElement& y) const {
    require(x);
    require(y);
    return x.b == y.b;
  }

  /// Reads "(b@<element>, g^<m>)".
  XElement parse_element(std::string_view text) const {
    auto s = detail::trim_view(text);
    if (!s.starts_with("(") || !s.ends_with(")"))
      throw Error(ErrorKind::InvalidArgument, "X element must look like (b@..., g^m), got '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
    const auto comma = s.rfind(',');
    if (comma == std::string_view::npos)
      throw Error(ErrorKind::InvalidArgument, "missing ',' in X element '" + std::string(text) + "'");
    auto bpart = detail::trim_view(s.substr(0, comma));
    auto gpart = detail::trim_view(s.substr(comma + 1));
    if (!bpart.starts_with("b@"))
      throw Error(ErrorKind::InvalidArgument, "chain element must start with 'b@' in '" + std::string(text) + "'");
    if (!gpart.starts_with("g^"))
      throw Error(ErrorKind::InvalidArgument, "group part must look like g^m in '" + std::string(text) + "'");
    return {parse_chain_element(chain_, bpart.substr(2)), parse_exponent(gpart.substr(2))};
  }

  static std::int64_t parse_exponent(std::string_view s) {
    s = detail::trim_view(s);
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    const auto v = static_cast<std::int64_t>(detail::parse_u64(s, "exponent"));
    return neg ? -v : v;
  }

 private:
  Chain chain_;
};

}  // namespace ultranorm
