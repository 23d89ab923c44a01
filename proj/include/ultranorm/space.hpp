#pragma once

// Finitely supported vectors over an orthogonal base {e_i} with ||e_i|| = nu(i) in X.
// The norm of sum c_i e_i is max_i |c_i| nu(i), taking values in X u {0}.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ultranorm/error.hpp"
#include "ultranorm/field.hpp"
#include "ultranorm/gmodule.hpp"
#include "ultranorm/random.hpp"

namespace ultranorm {

using Index = std::size_t;

/// A norm value: an element of X, or std::nullopt for the adjoined least element 0.
/// std::optional already orders nullopt below every engaged value.
using NormValue = std::optional<XElement>;

inline std::string to_string(const NormValue& n) { return n ? n->to_string() : "0"; }

/// A finitely supported coordinate map; zero coordinates are never stored.
class Vector {
 public:
  Vector() = default;

  static Vector unit(Index i) {
    Vector v;
    v.coords_.emplace(i, Scalar(1));
    return v;
  }

  Scalar operator[](Index i) const {
    auto it = coords_.find(i);
    return it == coords_.end() ? Scalar(0) : it->second;
  }

  void set(Index i, Scalar c) {
    if (c.is_zero())
      coords_.erase(i);
    else
      coords_.insert_or_assign(i, std::move(c));
  }

  bool is_zero() const noexcept { return coords_.empty(); }
  const std::map<Index, Scalar>& coords() const noexcept { return coords_; }

  Vector& operator+=(const Vector& o) {
    for (const auto& [i, c] : o.coords_) set(i, (*this)[i] + c);
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    for (const auto& [i, c] : o.coords_) set(i, (*this)[i] - c);
    return *this;
  }
  Vector& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      coords_.clear();
      return *this;
    }
    for (auto& [i, c] : coords_) c *= s;
    return *this;
  }
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const Scalar& s, Vector v) { return v *= s; }
  friend bool operator==(const Vector&, const Vector&) = default;

  /// a += s * b
  void axpy(const Scalar& s, const Vector& b) {
    if (s.is_zero()) return;
    for (const auto& [i, c] : b.coords_) set(i, (*this)[i] + s * c);
  }

 private:
  std::map<Index, Scalar> coords_;
};

/// A space with a named orthogonal base and its norm assignment nu.
class SpaceDescriptor {
 public:
  SpaceDescriptor(FieldConfig field, GModule module) : field_(field), module_(std::move(module)) {}

  Index add_basis_vector(std::string name, XElement norm) {
    module_.require(norm);
    if (find(name)) throw Error(ErrorKind::InvalidArgument, "duplicate index '" + name + "'");
    names_.push_back(std::move(name));
    nu_.push_back(std::move(norm));
    return names_.size() - 1;
  }

  const FieldConfig& field() const noexcept { return field_; }
  const GModule& module() const noexcept { return module_; }
  std::size_t dim() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Index i) const { return names_.at(check(i)); }
  const XElement& nu(Index i) const { return nu_.at(check(i)); }

  std::optional<Index> find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<Index>(it - names_.begin());
  }

  Index index_of(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw Error(ErrorKind::UnknownIndex, "unknown index '" + name + "'");
  }

  Index check(Index i) const {
    if (i >= names_.size()) throw Error(ErrorKind::UnknownIndex, "index " + std::to_string(i) + " out of range");
    return i;
  }

  /// "3*e1 + 1/5*e2", or "0".
  std::string format(const Vector& v) const {
    if (v.is_zero()) return "0";
    std::string out;
    for (const auto& [i, c] : v.coords()) {
      Scalar mag = c < Scalar(0) ? -c : c;
      if (out.empty())
        out += c < Scalar(0) ? "-" : "";
      else
        out += c < Scalar(0) ? " - " : " + ";
      if (!(mag == Scalar(1))) out += mag.pretty() + "*";
      out += name(i);
    }
    return out;
  }

 private:
  FieldConfig field_;
  GModule module_;
  std::vector<std::string> names_;
  std::vector<XElement> nu_;
};

/// act(|c|, nu(i)) for a single nonzero coordinate.
inline XElement coordinate_norm(const SpaceDescriptor& sp, Index i, const Scalar& c) {
  return act({abs(c, sp.field()).exponent()}, sp.nu(i));
}

inline NormValue norm(const Vector& v, const SpaceDescriptor& sp) {
  NormValue best;
  for (const auto& [i, c] : v.coords()) {
    XElement t = coordinate_norm(sp, i, c);
    if (!best || *best < t) best = std::move(t);
  }
  return best;
}

/// |s| * n, with 0 absorbing.
inline NormValue scale(const AbsValue& s, const NormValue& n) {
  if (s.is_zero() || !n) return std::nullopt;
  return act({s.exponent()}, *n);
}

struct LineDistance {
  NormValue dist;
  Scalar witness;
};

/// min over lambda of ||u - lambda v|| and the first minimizing lambda.
///
/// The minimum is attained on {0} u {u_i / v_i}: for any lambda, the candidate
/// r closest to lambda satisfies |r - r_i| <= |lambda - r_i| for every i, so
/// moving to r never increases a coordinate term.
inline LineDistance distance_to_line(const Vector& u, const Vector& v, const SpaceDescriptor& sp) {
  if (v.is_zero()) throw Error(ErrorKind::DivisionByZero, "distance to the line through 0");
  std::vector<Scalar> candidates{Scalar(0)};
  for (const auto& [i, ui] : u.coords()) {
    const Scalar vi = v[i];
    if (!vi.is_zero()) candidates.push_back(ui / vi);
  }
  LineDistance best{norm(u, sp), Scalar(0)};
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    Vector r = u;
    r.axpy(-candidates[k], v);
    NormValue n = norm(r, sp);
    if (n < best.dist) best = {std::move(n), candidates[k]};
  }
  return best;
}

struct Approximation {
  NormValue dist;
  Vector best;
  std::vector<Scalar> coefficients;  ///< best = sum coefficients[j] * D[j]
};

namespace detail {

// A basis of span D where each row is 1 at its own pivot column, 0 at every
// other pivot column, and attains its norm at the pivot. For such a basis
// ||sum mu_j w_j|| >= max ||mu_j w_j|| (read off the pivot columns), which
// makes v minus its pivot-column projection a best approximation residual.
struct PivotRow {
  Vector w;
  std::vector<Scalar> coef;
  Index pivot;
};

inline Index norm_attaining_index(const Vector& w, const SpaceDescriptor& sp) {
  Index arg = 0;
  std::optional<XElement> top;
  for (const auto& [i, c] : w.coords()) {
    XElement t = coordinate_norm(sp, i, c);
    if (!top || *top < t) {
      top = std::move(t);
      arg = i;
    }
  }
  return arg;
}

inline std::vector<PivotRow> pivot_basis(const std::vector<Vector>& D, const SpaceDescriptor& sp) {
  std::vector<PivotRow> rows;
  for (std::size_t j = 0; j < D.size(); ++j) {
    PivotRow row{D[j], std::vector<Scalar>(D.size(), Scalar(0)), 0};
    row.coef[j] = Scalar(1);
    for (const auto& r : rows) {
      const Scalar c = row.w[r.pivot];
      if (c.is_zero()) continue;
      row.w.axpy(-c, r.w);
      for (std::size_t k = 0; k < D.size(); ++k) row.coef[k] -= c * r.coef[k];
    }
    if (row.w.is_zero()) throw IndexedError(ErrorKind::LinearlyDependent, j, "vector lies in the span of its predecessors");
    row.pivot = norm_attaining_index(row.w, sp);
    const Scalar inv = row.w[row.pivot].inverse();
    row.w *= inv;
    for (auto& c : row.coef) c *= inv;
    for (auto& r : rows) {
      const Scalar c = r.w[row.pivot];
      if (c.is_zero()) continue;
      r.w.axpy(-c, row.w);
      for (std::size_t k = 0; k < D.size(); ++k) r.coef[k] -= c * row.coef[k];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// Exact best approximation of v from span D for any linearly independent D.
/// When v is already orthogonal to span D the zero approximation is returned.
inline Approximation best_approximation(const Vector& v, const std::vector<Vector>& D, const SpaceDescriptor& sp) {
  Approximation out{norm(v, sp), Vector(), std::vector<Scalar>(D.size(), Scalar(0))};
  if (D.empty()) return out;
  Vector best;
  std::vector<Scalar> coef(D.size(), Scalar(0));
  for (const auto& r : detail::pivot_basis(D, sp)) {
    const Scalar c = v[r.pivot];
    if (c.is_zero()) continue;
    best.axpy(c, r.w);
    for (std::size_t k = 0; k < D.size(); ++k) coef[k] += c * r.coef[k];
  }
  NormValue d = norm(v - best, sp);
  if (d < out.dist) out = {std::move(d), std::move(best), std::move(coef)};
  return out;
}

/// Zero vectors are rejected; an orthogonal system is linearly independent.
inline bool is_orthogonal_system(const std::vector<Vector>& vs, const SpaceDescriptor& sp) {
  for (std::size_t k = 0; k < vs.size(); ++k)
    if (vs[k].is_zero()) throw IndexedError(ErrorKind::ZeroVector, k, "orthogonality of the zero vector");
  std::vector<Vector> prefix;
  for (const auto& v : vs) {
    if (!prefix.empty() && best_approximation(v, prefix, sp).dist != norm(v, sp)) return false;
    prefix.push_back(v);
  }
  return true;
}

/// u is orthogonal to v iff dist(u, Kv) = ||u||; the symmetric condition is
/// equivalent and is asserted alongside.
inline bool is_orthogonal_pair(const Vector& u, const Vector& v, const SpaceDescriptor& sp) {
  if (u.is_zero() || v.is_zero()) throw Error(ErrorKind::ZeroVector, "orthogonality of the zero vector");
  const bool forward = distance_to_line(u, v, sp).dist == norm(u, sp);
  const bool backward = distance_to_line(v, u, sp).dist == norm(v, sp);
  if (forward != backward) throw std::logic_error("asymmetric orthogonality verdict");
  return forward;
}

struct SubspaceDistance {
  NormValue dist;
  Vector best;
};

inline SubspaceDistance distance_to_subspace(const Vector& v, const std::vector<Vector>& D, const SpaceDescriptor& sp) {
  if (!is_orthogonal_system(D, sp)) throw Error(ErrorKind::NotOrthogonal, "subspace generators are not orthogonal");
  auto a = best_approximation(v, D, sp);
  return {std::move(a.dist), std::move(a.best)};
}

struct GramSchmidtResult {
  std::vector<Vector> basis;
  /// Unit lower triangular: input[k] = basis[k] + sum_{j<k} mu[k][j] * basis[j].
  std::vector<std::vector<Scalar>> mu;
};

/// e_k = v_k minus its best approximation from span(e_1..e_{k-1}).
inline GramSchmidtResult gram_schmidt(const std::vector<Vector>& vs, const SpaceDescriptor& sp) {
  GramSchmidtResult out;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (vs[k].is_zero()) throw IndexedError(ErrorKind::LinearlyDependent, k, "zero vector");
    auto a = best_approximation(vs[k], out.basis, sp);
    if (!a.dist) throw IndexedError(ErrorKind::LinearlyDependent, k, "vector lies in the span of its predecessors");
    std::vector<Scalar> row = std::move(a.coefficients);
    row.resize(vs.size(), Scalar(0));
    row[k] = Scalar(1);
    out.basis.push_back(vs[k] - a.best);
    out.mu.push_back(std::move(row));
  }
  return out;
}

struct Renormalized {
  std::vector<Vector> vectors;
  std::vector<std::int64_t> exponents;  ///< f_k = p^exponents[k] e_k
};

/// Smallest-magnitude n with (b, m - n) < bound.
inline std::int64_t exponent_below(const XElement& x, const XElement& bound) {
  const std::int64_t needed = x.b < bound.b ? x.m - bound.m : x.m - bound.m + 1;
  return std::max<std::int64_t>(needed, 0);
}

/// f_1 = e_1 and f_{k+1} = p^n e_{k+1} with n the smallest-magnitude exponent
/// putting ||f_{k+1}|| strictly below both ||f_k|| and s_k.
inline Renormalized renormalize_decreasing(const std::vector<Vector>& es, const std::vector<XElement>& s,
                                           const SpaceDescriptor& sp) {
  if (es.empty()) return {};
  if (s.size() + 1 < es.size())
    throw Error(ErrorKind::InvalidArgument, "need at least " + std::to_string(es.size() - 1) + " target values");
  for (std::size_t k = 1; k < s.size(); ++k)
    if (!(s[k] < s[k - 1])) throw IndexedError(ErrorKind::NotDecreasing, k, "target sequence is not strictly decreasing");
  if (!is_orthogonal_system(es, sp)) throw Error(ErrorKind::NotOrthogonal, "input is not an orthogonal system");

  Renormalized out;
  out.vectors.push_back(es[0]);
  out.exponents.push_back(0);
  for (std::size_t k = 1; k < es.size(); ++k) {
    const XElement prev = *norm(out.vectors.back(), sp);
    const XElement bound = std::min(prev, s[k - 1]);
    const std::int64_t n = exponent_below(*norm(es[k], sp), bound);
    out.vectors.push_back(uniformizer_power(n, sp.field()) * es[k]);
    out.exponents.push_back(n);
  }
  return out;
}

enum class PerturbResult { Orthogonal, NotOrthogonal, HypothesisFailed };

inline const char* to_string(PerturbResult r) {
  switch (r) {
    case PerturbResult::Orthogonal: return "orthogonal";
    case PerturbResult::NotOrthogonal: return "not-orthogonal";
    case PerturbResult::HypothesisFailed: return "hypothesis-failed";
  }
  return "?";
}

/// If ||a_k - b_k|| < ||a_k|| for every k, the b's must again be orthogonal.
inline PerturbResult perturb_check(const std::vector<Vector>& as, const std::vector<Vector>& bs,
                                   const SpaceDescriptor& sp) {
  if (as.size() != bs.size()) throw Error(ErrorKind::DimensionMismatch, "perturbation lists differ in length");
  if (!is_orthogonal_system(as, sp)) throw Error(ErrorKind::NotOrthogonal, "unperturbed list is not orthogonal");
  for (std::size_t k = 0; k < as.size(); ++k)
    if (!(norm(as[k] - bs[k], sp) < norm(as[k], sp))) return PerturbResult::HypothesisFailed;
  return is_orthogonal_system(bs, sp) ? PerturbResult::Orthogonal : PerturbResult::NotOrthogonal;
}

/// A random vector with `support` distinct coordinates whose valuations lie in [vmin, vmax].
inline Vector random_vector(Rng& rng, const SpaceDescriptor& sp, std::size_t support, std::int64_t vmin,
                            std::int64_t vmax) {
  std::vector<Index> idx(sp.dim());
  for (Index i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  Vector v;
  for (std::size_t k = 0; k < std::min(support, idx.size()); ++k) v.set(idx[k], random_scalar(rng, sp.field(), vmin, vmax));
  return v;
}

}  // namespace ultranorm
