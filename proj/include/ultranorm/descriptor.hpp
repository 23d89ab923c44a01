#pragma once

// Line-oriented descriptor files:
//
//   # comment
//   [field]
//   p = 5
//
//   [chain]
//   B = qinterval01
//
//   [space]
//   complete = true
//   e1: (b@1/2, g^0)
//   e2: (b@1, g^-1)
//   mult b@1 = inf
//
//   [vectors]
//   u = 3*e1 + 1/5*e2
//
// [field] and [chain] must precede [space]; [space] must precede [vectors].

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ultranorm/chain.hpp"
#include "ultranorm/classify.hpp"
#include "ultranorm/error.hpp"
#include "ultranorm/gmodule.hpp"
#include "ultranorm/space.hpp"

namespace ultranorm {

namespace detail {

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace detail

/// Reads "3*e1 + 1/5*e2 - e3" (or "0") against the names of sp.
inline Vector parse_vector(std::string_view text, const SpaceDescriptor& sp) {
  auto s = detail::trim_view(text);
  if (s == "0") return Vector();
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty vector literal");
  Vector v;
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      negative = s[pos] == '-';
      ++pos;
    } else if (!first) {
      throw Error(ErrorKind::InvalidArgument, "expected '+' or '-' in vector literal '" + std::string(text) + "'");
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    auto term = detail::trim_view(s.substr(pos, end - pos));
    pos = end;
    first = false;

    Scalar coef(1);
    std::string_view name = term;
    if (auto star = term.find('*'); star != std::string_view::npos) {
      coef = Scalar::parse(term.substr(0, star));
      name = detail::trim_view(term.substr(star + 1));
    }
    if (!detail::is_identifier(name))
      throw Error(ErrorKind::InvalidArgument, "bad term '" + std::string(term) + "' in vector literal");
    const Index i = sp.index_of(std::string(name));
    v.set(i, v[i] + (negative ? -coef : coef));
  }
  return v;
}

struct DescriptorFile {
  FieldConfig field;
  Chain chain;
  SpaceDescriptor space;
  std::map<ChainElement, Multiplicity> declared;
  bool completeness_assumed = true;
  std::vector<std::pair<std::string, Vector>> vectors;

  /// Census of the base with declared multiplicities taking precedence.
  SpaceClass space_class() const {
    SpaceClass sc = SpaceClass::from_space(space);
    for (const auto& [b, m] : declared) sc.multiplicity.insert_or_assign(b, m);
    sc.completeness_assumed = completeness_assumed;
    return sc;
  }

  const Vector* find_vector(const std::string& name) const {
    for (const auto& [n, v] : vectors)
      if (n == name) return &v;
    return nullptr;
  }

  /// A named vector from [vectors], otherwise a literal.
  Vector resolve(const std::string& token) const {
    if (auto* v = find_vector(token)) return *v;
    return parse_vector(token, space);
  }

  std::string serialize() const {
    std::ostringstream out;
    out << "[field]\np = " << field.p() << "\n\n[chain]\nB = " << chain.descriptor() << "\n\n[space]\n";
    out << "complete = " << (completeness_assumed ? "true" : "false") << "\n";
    for (Index i = 0; i < space.dim(); ++i) out << space.name(i) << ": " << space.nu(i).to_string() << "\n";
    for (const auto& [b, m] : declared) out << "mult b@" << b.to_string() << " = " << m.to_string() << "\n";
    if (!vectors.empty()) {
      out << "\n[vectors]\n";
      for (const auto& [n, v] : vectors) out << n << " = " << space.format(v) << "\n";
    }
    return out.str();
  }

  friend bool operator==(const DescriptorFile& a, const DescriptorFile& b) {
    if (!(a.field == b.field) || !(a.chain == b.chain) || a.completeness_assumed != b.completeness_assumed) return false;
    if (a.space.names() != b.space.names()) return false;
    for (Index i = 0; i < a.space.dim(); ++i)
      if (!(a.space.nu(i) == b.space.nu(i))) return false;
    return a.declared == b.declared && a.vectors == b.vectors;
  }
};

inline DescriptorFile parse_descriptor(std::string_view text) {
  std::optional<FieldConfig> field;
  std::optional<Chain> chain;
  std::optional<SpaceDescriptor> space;
  std::map<ChainElement, Multiplicity> declared;
  bool complete = true;
  std::vector<std::pair<std::string, Vector>> vectors;
  std::string section;

  auto ensure_space = [&](std::size_t line) -> SpaceDescriptor& {
    if (!space) {
      if (!chain) throw ParseError(line, "[chain] must come before [space]");
      space.emplace(field.value_or(FieldConfig(2)), GModule(*chain));
    }
    return *space;
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim_view(line);
    if (line.empty()) continue;
    try {
      if (line.front() == '[') {
        if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
        section = std::string(detail::trim_view(line.substr(1, line.size() - 2)));
        if (section != "field" && section != "chain" && section != "space" && section != "vectors")
          throw ParseError(lineno, "unknown section [" + section + "]");
        if ((section == "field" || section == "chain") && space)
          throw ParseError(lineno, "[" + section + "] must come before [space]");
        continue;
      }
      if (section.empty()) throw ParseError(lineno, "content outside of a section");

      if (section == "space") {
        auto& sp = ensure_space(lineno);
        if (line.starts_with("mult ")) {
          auto eq = line.find('=');
          if (eq == std::string_view::npos) throw ParseError(lineno, "expected 'mult b@<element> = <n|inf>'");
          auto lhs = detail::trim_view(line.substr(5, eq - 5));
          auto rhs = detail::trim_view(line.substr(eq + 1));
          if (!lhs.starts_with("b@")) throw ParseError(lineno, "multiplicity key must start with 'b@'");
          ChainElement b = parse_chain_element(*chain, lhs.substr(2));
          declared.insert_or_assign(b, rhs == "inf" ? Multiplicity::unbounded()
                                                    : Multiplicity::finite(detail::parse_u64(rhs, "multiplicity")));
          continue;
        }
        if (auto colon = line.find(':'); colon != std::string_view::npos) {
          auto name = detail::trim_view(line.substr(0, colon));
          if (!detail::is_identifier(name)) throw ParseError(lineno, "bad index name '" + std::string(name) + "'");
          sp.add_basis_vector(std::string(name), sp.module().parse_element(line.substr(colon + 1)));
          continue;
        }
      }

      auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError(lineno, "expected 'key = value'");
      const std::string key(detail::trim_view(line.substr(0, eq)));
      const auto value = detail::trim_view(line.substr(eq + 1));

      if (section == "field") {
        if (key != "p") throw ParseError(lineno, "unknown field key '" + key + "'");
        field.emplace(static_cast<std::int64_t>(detail::parse_u64(value, "prime")));
      } else if (section == "chain") {
        if (key != "B") throw ParseError(lineno, "unknown chain key '" + key + "'");
        chain.emplace(Chain::parse(value));
      } else if (section == "space") {
        if (key != "complete") throw ParseError(lineno, "unknown space key '" + key + "'");
        if (value != "true" && value != "false") throw ParseError(lineno, "complete must be true or false");
        complete = value == "true";
      } else {
        if (!space) throw ParseError(lineno, "[space] must come before [vectors]");
        if (!detail::is_identifier(key)) throw ParseError(lineno, "bad vector name '" + key + "'");
        for (const auto& [n, v] : vectors)
          if (n == key) throw ParseError(lineno, "duplicate vector '" + key + "'");
        vectors.emplace_back(key, parse_vector(value, *space));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!chain) throw ParseError(0, "missing [chain] section");
  auto& sp = ensure_space(lineno);
  return DescriptorFile{field.value_or(FieldConfig(2)), *chain, sp, std::move(declared), complete, std::move(vectors)};
}

}  // namespace ultranorm
