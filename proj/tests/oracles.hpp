#pragma once

// Brute-force oracles used only by the tests. None of them calls into the
// algorithms they check; they share only the data types.

#include <cstdint>
#include <optional>
#include <vector>

#include "ultranorm/ultranorm.hpp"

namespace oracle {

using namespace ultranorm;

/// v_p(n / d) for machine integers by repeated division.
inline std::optional<std::int64_t> valuation_small(std::int64_t n, std::int64_t d, std::int64_t p) {
  if (n == 0) return std::nullopt;
  std::int64_t v = 0;
  while (n % p == 0) n /= p, ++v;
  while (d % p == 0) d /= p, --v;
  return v;
}

/// v_p of a big rational via repeated BigInt division (independent of the library's helper).
inline std::optional<std::int64_t> valuation(const Scalar& x, std::int64_t p) {
  if (x.is_zero()) return std::nullopt;
  auto strip = [p](BigInt n) {
    std::int64_t c = 0;
    if (n < 0) n = -n;
    while (n % p == 0) n /= p, ++c;
    return c;
  };
  return strip(x.numerator()) - strip(x.denominator());
}

/// Norm by the defining formula: max over coordinates of (b_i, m_i - v_p(c_i)).
inline std::optional<XElement> norm(const Vector& v, const SpaceDescriptor& sp) {
  std::optional<XElement> best;
  for (const auto& [i, c] : v.coords()) {
    XElement t{sp.nu(i).b, sp.nu(i).m - *valuation(c, sp.field().p())};
    if (!best || *best < t) best = t;
  }
  return best;
}

/// canonical_rep by scanning k until g^-k x lands in [a, g a).
inline std::pair<XElement, std::int64_t> canonical_rep_scan(const XElement& x, const XElement& a) {
  const XElement ga{a.b, a.m + 1};
  for (std::int64_t k = -1000; k <= 1000; ++k) {
    XElement r{x.b, x.m - k};
    if (a <= r && r < ga) return {r, k};
  }
  throw std::runtime_error("canonical_rep_scan: not found");
}

/// max{k : g^k x0 <= x} by scanning.
inline std::int64_t phi_scan(const XElement& x, const XElement& x0) {
  std::optional<std::int64_t> best;
  for (std::int64_t k = -1000; k <= 1000; ++k)
    if (XElement{x0.b, x0.m + k} <= x) best = k;
  return *best;
}

/// {0} u {u p^k : 1 <= u < p^2, p does not divide u, k in [kmin, kmax]}.
/// Every residue class mod p^2 (hence every leading digit, of either sign) is
/// represented at each valuation.
inline std::vector<Scalar> orthogonality_grid(std::int64_t p, std::int64_t kmin, std::int64_t kmax) {
  FieldConfig f(p);
  std::vector<Scalar> grid{Scalar(0)};
  for (std::int64_t k = kmin; k <= kmax; ++k)
    for (std::int64_t u = 1; u < p * p; ++u) {
      if (u % p == 0) continue;
      grid.push_back(Scalar(u) * uniformizer_power(k, f));
    }
  return grid;
}

/// Max-attainment check ||a u + b v|| = max(||a u||, ||b v||) over the grid,
/// once with a = 1 and once with b = 1.
inline bool orthogonal_by_grid(const Vector& u, const Vector& v, const SpaceDescriptor& sp,
                               const std::vector<Scalar>& grid) {
  auto attains_max = [&](const Vector& x, const Vector& y) {
    std::optional<XElement> nx = oracle::norm(x, sp), ny = oracle::norm(y, sp);
    std::optional<XElement> m = std::max(nx, ny);
    return oracle::norm(x + y, sp) == m;
  };
  for (const auto& s : grid) {
    if (!attains_max(u, s * v)) return false;
    if (!attains_max(s * u, v)) return false;
  }
  return true;
}

/// Coefficient grid {0} u {+-u p^k : 1 <= u < p, k in [kmin, kmax]}.
inline std::vector<Scalar> coefficient_grid(std::int64_t p, std::int64_t kmin, std::int64_t kmax) {
  FieldConfig f(p);
  std::vector<Scalar> grid{Scalar(0)};
  for (std::int64_t k = kmin; k <= kmax; ++k)
    for (std::int64_t u = 1; u < p; ++u) {
      grid.push_back(Scalar(u) * uniformizer_power(k, f));
      grid.push_back(Scalar(-u) * uniformizer_power(k, f));
    }
  return grid;
}

inline Vector combine(const std::vector<Vector>& D, const std::vector<Scalar>& c) {
  Vector out;
  for (std::size_t j = 0; j < D.size(); ++j)
    for (const auto& [i, x] : D[j].coords()) out.set(i, out[i] + c[j] * x);
  return out;
}

/// Minimum of ||v - sum c_j D_j|| over the coefficient grid (all |D|-tuples).
inline std::optional<XElement> grid_min_distance(const Vector& v, const std::vector<Vector>& D, const SpaceDescriptor& sp,
                                                 const std::vector<Scalar>& grid) {
  std::vector<std::size_t> idx(D.size(), 0);
  std::optional<XElement> best = oracle::norm(v, sp);
  for (;;) {
    std::vector<Scalar> c;
    for (auto i : idx) c.push_back(grid[i]);
    best = std::min(best, oracle::norm(v - combine(D, c), sp));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == grid.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return best;
}

/// Rank by exact elimination over the coordinates that occur.
inline std::size_t rank(const std::vector<Vector>& vs) {
  std::vector<Vector> rows;
  for (Vector v : vs) {
    for (const auto& r : rows) {
      const auto& [i, c] = *r.coords().begin();
      const Scalar f = v[i] / c;
      if (!f.is_zero()) v = v - f * r;
    }
    if (!v.is_zero()) rows.push_back(v);
  }
  return rows.size();
}

/// Solves the square system A c = b exactly; nullopt when singular.
inline std::optional<std::vector<Scalar>> solve(std::vector<std::vector<Scalar>> A, std::vector<Scalar> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col].is_zero()) continue;
      const Scalar f = A[r][col] / A[col][col];
      for (std::size_t k = col; k < n; ++k) A[r][k] -= f * A[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= A[i][i];
  return b;
}

/// Exact min over c in K^n of ||v - sum c_j D_j|| by vertex enumeration.
///
/// Along any line c + t d each coordinate term is |a_i + t b_i| nu_i, and
/// moving t to the root -a_i / b_i nearest to it never increases a term. So
/// some minimizer satisfies n independent equations drawn from
/// {coordinate i of the residual = 0} u {c_j = 0}; we try every such system.
inline std::optional<XElement> exact_min_distance(const Vector& v, const std::vector<Vector>& D,
                                                  const SpaceDescriptor& sp) {
  const std::size_t n = D.size();
  if (n == 0) return oracle::norm(v, sp);
  std::vector<Index> coords;
  for (const auto& [i, c] : v.coords()) coords.push_back(i);
  for (const auto& d : D)
    for (const auto& [i, c] : d.coords()) coords.push_back(i);
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());

  // Equation rows: first the coordinate equations, then c_j = 0.
  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;
  for (Index i : coords) {
    std::vector<Scalar> row;
    for (const auto& d : D) row.push_back(d[i]);
    rows.push_back(row);
    rhs.push_back(v[i]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Scalar> row(n, Scalar(0));
    row[j] = Scalar(1);
    rows.push_back(row);
    rhs.push_back(Scalar(0));
  }

  std::optional<XElement> best = oracle::norm(v, sp);
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  const std::size_t m = rows.size();
  for (;;) {
    std::vector<std::vector<Scalar>> A;
    std::vector<Scalar> b;
    for (auto r : pick) A.push_back(rows[r]), b.push_back(rhs[r]);
    if (auto c = solve(A, b)) best = std::min(best, oracle::norm(v - combine(D, *c), sp));
    // next n-combination of m
    std::size_t k = n;
    while (k > 0 && pick[k - 1] == m - n + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace oracle
