#pragma once

// Decision layer over X-normed spaces with X = B x G, G cyclic:
//
//   * E is a Norm Hilbert space iff B is well ordered (equivalently iff any
//     interval [a, g a) is well ordered);
//   * E contains c0 iff some orbit class G b carries infinitely many base vectors;
//   * finitary probes of strictly decreasing norm sequences, which must leave
//     every copy g^m B after finitely many steps when B is well ordered;
//   * finite-stage shift isometries witnessing non-rigidity of c0.
//
// Completeness of E is an assumption carried by SpaceClass, never decided.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ultranorm/chain.hpp"
#include "ultranorm/error.hpp"
#include "ultranorm/gmodule.hpp"
#include "ultranorm/random.hpp"
#include "ultranorm/space.hpp"

namespace ultranorm {

struct Multiplicity {
  bool infinite = false;
  std::uint64_t count = 0;

  static Multiplicity finite(std::uint64_t n) { return {false, n}; }
  static Multiplicity unbounded() { return {true, 0}; }

  /// Whether a census of n vectors fits under this multiplicity.
  bool admits(std::uint64_t n) const { return infinite || n <= count; }

  std::string to_string() const { return infinite ? "inf" : std::to_string(count); }
  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

/// Symbolic description of a space: the convex base B and, per orbit class
/// G b, how many base vectors have norm in that class (default 0).
struct SpaceClass {
  Chain chain;
  std::map<ChainElement, Multiplicity> multiplicity;
  bool completeness_assumed = true;

  explicit SpaceClass(Chain c) : chain(std::move(c)) {}

  Multiplicity multiplicity_of(const ChainElement& b) const {
    chain.require(b);
    auto it = multiplicity.find(b);
    return it == multiplicity.end() ? Multiplicity::finite(0) : it->second;
  }

  /// Orbit-class census of a finite descriptor.
  static SpaceClass from_space(const SpaceDescriptor& sp) {
    SpaceClass sc(sp.module().chain());
    for (Index i = 0; i < sp.dim(); ++i) ++sc.multiplicity[sp.nu(i).b].count;
    return sc;
  }
};

inline void require_complete(const SpaceClass& sc) {
  if (!sc.completeness_assumed)
    throw Error(ErrorKind::CompletenessNotAssumed, "NHS classification is stated for Banach spaces");
}

inline bool is_nhs(const SpaceClass& sc) {
  require_complete(sc);
  return sc.chain.is_well_ordered() == WellOrdered::Yes;
}

/// Decides well-orderedness of [a, g a) directly: it is the segment of B at or
/// above a.b (at level a.m) followed by the segment strictly below a.b (at level a.m + 1).
inline bool is_nhs_from_point(const SpaceClass& sc, const XElement& a) {
  require_complete(sc);
  const Chain& B = sc.chain;
  return B.segment_well_ordered(a.b, Segment::AtLeast) == WellOrdered::Yes &&
         B.segment_well_ordered(a.b, Segment::Below) == WellOrdered::Yes;
}

inline bool contains_c0(const SpaceClass& sc) {
  return std::any_of(sc.multiplicity.begin(), sc.multiplicity.end(), [](const auto& kv) { return kv.second.infinite; });
}

// ---------------------------------------------------------------------------
// Sequence probes

/// Single-consumer stream of norm values; std::nullopt ends the stream.
struct SequenceProbe {
  std::function<std::optional<XElement>()> next;
  std::size_t max_steps = 1000;
  /// A class holding more than this many terms is reported as stagnating.
  std::size_t stagnation_bound = 128;
};

enum class ProbeVerdict { Drift, Stagnation, Exhausted };

inline const char* to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::Drift: return "drift";
    case ProbeVerdict::Stagnation: return "stagnation";
    case ProbeVerdict::Exhausted: return "exhausted";
  }
  return "?";
}

struct ProbeReport {
  std::map<std::int64_t, std::size_t> occupancy;  ///< exponent class m -> number of terms in g^m B
  std::size_t steps = 0;
  ProbeVerdict verdict = ProbeVerdict::Exhausted;
  std::optional<std::int64_t> stagnant_class;
  std::vector<XElement> stagnant_terms;  ///< the terms of the stagnant class, in order
  /// False when a well-ordered B shows stagnation, which the theory forbids.
  bool consistent_with_chain = true;

  std::size_t max_occupancy() const {
    std::size_t m = 0;
    for (const auto& [k, n] : occupancy) m = std::max(m, n);
    return m;
  }
};

inline ProbeReport probe_sequence(const SpaceClass& sc, const SequenceProbe& probe) {
  ProbeReport r;
  std::optional<XElement> prev;
  bool exhausted = false;
  std::map<std::int64_t, std::vector<XElement>> by_class;
  for (std::size_t step = 0; step < probe.max_steps; ++step) {
    auto x = probe.next();
    if (!x) {
      exhausted = true;
      break;
    }
    sc.chain.require(x->b);
    if (prev && !(*x < *prev))
      throw IndexedError(ErrorKind::NotDecreasing, step, "probe term " + x->to_string() + " does not decrease");
    const std::size_t n = ++r.occupancy[x->m];
    if (!r.stagnant_class) {
      auto& terms = by_class[x->m];
      terms.push_back(*x);
      if (n > probe.stagnation_bound) {
        r.stagnant_class = x->m;
        r.stagnant_terms = terms;
      }
    }
    prev = std::move(x);
    ++r.steps;
  }
  if (r.stagnant_class)
    r.verdict = ProbeVerdict::Stagnation;
  else
    r.verdict = exhausted ? ProbeVerdict::Exhausted : ProbeVerdict::Drift;
  r.consistent_with_chain = !(r.stagnant_class && sc.chain.is_well_ordered() == WellOrdered::Yes);
  return r;
}

/// g^-n x0 for n = 0, 1, 2, ...
inline std::function<std::optional<XElement>()> geometric_descent(XElement x0) {
  return [x = std::move(x0), n = std::int64_t{0}]() mutable -> std::optional<XElement> { return act({-n++}, x); };
}

/// The chain's descending witness placed in the single class g^m B.
inline std::function<std::optional<XElement>()> in_class_descent(const Chain& chain, std::int64_t m, std::size_t k) {
  auto witness = chain.descending_witness(k);
  return [w = std::move(witness), m, i = std::size_t{0}]() mutable -> std::optional<XElement> {
    if (i >= w.size()) return std::nullopt;
    return XElement{w[i++], m};
  };
}

inline std::function<std::optional<XElement>()> scripted(std::vector<XElement> terms) {
  return [t = std::move(terms), i = std::size_t{0}]() mutable -> std::optional<XElement> {
    if (i >= t.size()) return std::nullopt;
    return t[i++];
  };
}

/// Random strictly decreasing walk: stays in the current class (moving to a
/// random smaller chain element) with probability `stay`, otherwise drops to
/// the next class down at a random chain element.
inline std::function<std::optional<XElement>()> random_descent(Chain chain, XElement start, std::uint64_t seed,
                                                               double stay = 0.5) {
  return [chain = std::move(chain), cur = std::optional<XElement>(), start = std::move(start), rng = Rng(seed),
          stay]() mutable -> std::optional<XElement> {
    if (!cur) {
      cur = start;
      return cur;
    }
    std::optional<ChainElement> lower;
    if (coin(rng, stay)) lower = chain.sample_below(cur->b, rng);
    cur = lower ? XElement{std::move(*lower), cur->m} : XElement{chain.sample(rng), cur->m - 1};
    return cur;
  };
}

// ---------------------------------------------------------------------------
// Linear maps on finite truncations

/// Dense matrix over K; column j is the image of base vector j.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> data;

  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Scalar(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  Scalar& operator()(std::size_t r, std::size_t c) { return data.at(r * cols + c); }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data.at(r * cols + c); }

  Vector apply(const Vector& v) const {
    Vector out;
    for (const auto& [j, c] : v.coords()) {
      if (j >= cols) throw Error(ErrorKind::DimensionMismatch, "vector index outside the matrix domain");
      for (std::size_t i = 0; i < rows; ++i)
        if (!(*this)(i, j).is_zero()) out.set(i, out[i] + (*this)(i, j) * c);
    }
    return out;
  }

  std::size_t rank() const {
    std::vector<Scalar> m = data;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
      std::size_t piv = rank;
      while (piv < rows && m[piv * cols + c].is_zero()) ++piv;
      if (piv == rows) continue;
      for (std::size_t k = 0; k < cols; ++k) std::swap(m[piv * cols + k], m[rank * cols + k]);
      for (std::size_t r = rank + 1; r < rows; ++r) {
        if (m[r * cols + c].is_zero()) continue;
        const Scalar f = m[r * cols + c] / m[rank * cols + c];
        for (std::size_t k = c; k < cols; ++k) m[r * cols + k] -= f * m[rank * cols + k];
      }
      ++rank;
    }
    return rank;
  }
};

/// Falsification check: ||T v|| = ||v|| on every base vector, every pairwise
/// sum of base vectors and `samples` random vectors. False is conclusive,
/// true is evidence only.
inline bool is_isometry(const Matrix& T, const SpaceDescriptor& domain, const SpaceDescriptor& codomain,
                        std::size_t samples, std::uint64_t seed = 0) {
  if (T.cols != domain.dim() || T.rows != codomain.dim())
    throw Error(ErrorKind::DimensionMismatch, "matrix is " + std::to_string(T.rows) + "x" + std::to_string(T.cols) +
                                                  ", spaces have dimensions " + std::to_string(codomain.dim()) + " and " +
                                                  std::to_string(domain.dim()));
  auto preserved = [&](const Vector& v) { return norm(T.apply(v), codomain) == norm(v, domain); };
  const std::size_t n = domain.dim();
  for (Index i = 0; i < n; ++i) {
    if (!preserved(Vector::unit(i))) return false;
    for (Index j = i + 1; j < n; ++j)
      if (!preserved(Vector::unit(i) + Vector::unit(j))) return false;
  }
  Rng rng(seed);
  for (std::size_t s = 0; s < samples && n > 0; ++s) {
    const auto support = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(n)));
    if (!preserved(random_vector(rng, domain, support, -3, 3))) return false;
  }
  return true;
}

inline bool is_isometry(const Matrix& T, const SpaceDescriptor& sp, std::size_t samples, std::uint64_t seed = 0) {
  if (T.rows != T.cols) throw Error(ErrorKind::DimensionMismatch, "isometry check needs a square matrix");
  return is_isometry(T, sp, sp, samples, seed);
}

struct ShiftDemo {
  std::vector<Index> base_indices;      ///< a_k = p^scaling[k] e_{base_indices[k]}
  std::vector<std::int64_t> scaling;
  std::vector<Vector> a;                ///< a_1 .. a_{n+1} in the ambient space, all of norm s
  Matrix shift{0, 0};                   ///< (n+1) x n in the bases {a_k}: a_k -> a_{k+1}
  std::string description;
  bool is_isometry = false;
  bool is_surjective_on_truncation = true;
};

/// Builds T(a_k) = a_{k+1} on span(a_1..a_n) into span(a_1..a_{n+1}), where the
/// a_k are rescaled base vectors of norm s. Needs n + 1 base vectors in the
/// orbit class of s; otherwise raises InsufficientEqualNormVectors.
inline ShiftDemo shift_isometry_demo(std::size_t n, const XElement& s, const SpaceDescriptor& sp,
                                     std::size_t samples = 64, std::uint64_t seed = 0) {
  sp.module().require(s);
  ShiftDemo demo;
  for (Index i = 0; i < sp.dim() && demo.base_indices.size() < n + 1; ++i) {
    if (!(sp.nu(i).b == s.b)) continue;
    const std::int64_t k = sp.nu(i).m - s.m;
    demo.base_indices.push_back(i);
    demo.scaling.push_back(k);
    demo.a.push_back(uniformizer_power(k, sp.field()) * Vector::unit(i));
  }
  if (demo.base_indices.size() < n + 1)
    throw Error(ErrorKind::InsufficientEqualNormVectors,
                "need " + std::to_string(n + 1) + " base vectors with norm in the orbit of " + s.to_string() + ", found " +
                    std::to_string(demo.base_indices.size()));

  // The truncations, as spaces in their own right with the a_k as base.
  SpaceDescriptor domain(sp.field(), sp.module());
  SpaceDescriptor codomain(sp.field(), sp.module());
  for (std::size_t k = 0; k <= n; ++k) {
    if (k < n) domain.add_basis_vector("a" + std::to_string(k + 1), *norm(demo.a[k], sp));
    codomain.add_basis_vector("a" + std::to_string(k + 1), *norm(demo.a[k], sp));
  }
  demo.shift = Matrix(n + 1, n);
  for (std::size_t k = 0; k < n; ++k) demo.shift(k + 1, k) = Scalar(1);

  for (std::size_t k = 0; k <= n; ++k) {
    demo.description += "a" + std::to_string(k + 1) + " = " + sp.format(demo.a[k]);
    if (k < n) demo.description += "; T(a" + std::to_string(k + 1) + ") = a" + std::to_string(k + 2);
    demo.description += "\n";
  }
  demo.is_isometry = is_isometry(demo.shift, domain, codomain, samples, seed);
  demo.is_surjective_on_truncation = demo.shift.rank() == codomain.dim();
  return demo;
}

// ---------------------------------------------------------------------------
// Suite

struct Check {
  std::string name;
  std::string verdict;
  std::string witness;  ///< empty when there is nothing to show
  std::string ref;      ///< the statement the check exercises
  bool passed = true;
};

struct Report {
  std::string command;
  std::vector<Check> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

/// Every declared multiplicity must be able to hold the descriptor's own census.
inline void require_consistent(const SpaceDescriptor& sp, const SpaceClass& sc) {
  if (!(sp.module().chain() == sc.chain))
    throw Error(ErrorKind::InconsistentDescriptor, "space chain " + sp.module().chain().descriptor() +
                                                       " differs from class chain " + sc.chain.descriptor());
  for (const auto& [b, count] : SpaceClass::from_space(sp).multiplicity) {
    const Multiplicity declared = sc.multiplicity_of(b);
    if (!declared.admits(count.count))
      throw Error(ErrorKind::InconsistentDescriptor, "orbit class of b@" + b.to_string() + " holds " +
                                                         std::to_string(count.count) + " base vectors but " +
                                                         declared.to_string() + " are declared");
  }
}

namespace detail {

inline std::string join_norms(const std::vector<XElement>& xs, std::size_t limit = 6) {
  std::string out;
  for (std::size_t i = 0; i < xs.size() && i < limit; ++i) out += (i ? " > " : "") + xs[i].to_string();
  if (xs.size() > limit) out += " > ... (" + std::to_string(xs.size()) + " terms)";
  return out;
}

inline std::vector<Vector> random_orthogonal_system(Rng& rng, const SpaceDescriptor& sp, std::size_t count) {
  for (;;) {
    std::vector<Vector> vs;
    for (std::size_t k = 0; k < count; ++k)
      vs.push_back(random_vector(rng, sp, static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(sp.dim()))), -3, 3));
    try {
      return gram_schmidt(vs, sp).basis;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::LinearlyDependent) throw;
    }
  }
}

}  // namespace detail

/// Finitary surrogates of the NHS characterizations on a finite truncation sp
/// of the space described by sc. Randomized parts are driven by `seed`.
inline Report nhs_suite(const SpaceDescriptor& sp, const SpaceClass& sc, std::size_t samples, std::uint64_t seed = 0) {
  require_consistent(sp, sc);
  Report rep{"suite", {}};
  Rng rng(seed);
  const Chain& B = sc.chain;
  const bool wo = B.is_well_ordered() == WellOrdered::Yes;
  const bool nhs = is_nhs(sc);

  rep.checks.push_back({"chain-verdict", to_string(B.is_well_ordered()), B.descriptor(), "well-orderedness of the convex base B", true});
  rep.checks.push_back({"nhs", nhs ? "true" : "false", "", "E is a NHS iff B is well ordered", true});

  {
    std::size_t disagreements = 0;
    std::string first;
    for (std::size_t k = 0; k < std::min<std::size_t>(samples, 20); ++k) {
      XElement a{B.sample(rng), uniform_int(rng, -5, 5)};
      if (is_nhs_from_point(sc, a) != nhs && disagreements++ == 0) first = a.to_string();
    }
    rep.checks.push_back({"nhs-from-point", disagreements ? "fail" : "pass", first,
                          "E is a NHS iff [a, g a) is well ordered, for any a", disagreements == 0});
  }

  if (sp.dim() > 0) {
    std::size_t failures = 0;
    std::size_t perturb_failures = 0;
    std::size_t renorm_failures = 0;
    for (std::size_t k = 0; k < samples; ++k) {
      const auto count = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(std::min<std::size_t>(sp.dim(), 4))));
      auto es = detail::random_orthogonal_system(rng, sp, count);
      if (!is_orthogonal_system(es, sp)) ++failures;

      // Renormalize below g^-1, g^-2, ... of the top norm.
      std::vector<XElement> targets;
      const XElement top = *norm(es[0], sp);
      for (std::size_t j = 1; j < es.size(); ++j) targets.push_back(act({-static_cast<std::int64_t>(j)}, top));
      auto f = renormalize_decreasing(es, targets, sp);
      for (std::size_t j = 1; j < f.vectors.size(); ++j)
        if (!(norm(f.vectors[j], sp) < norm(f.vectors[j - 1], sp)) || !(norm(f.vectors[j], sp) < NormValue(targets[j - 1])))
          ++renorm_failures;

      std::vector<Vector> bs;
      for (const auto& a : es) {
        Vector w = random_vector(rng, sp, static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(sp.dim()))), -3, 3);
        const std::int64_t shift = exponent_below(*norm(w, sp), *norm(a, sp)) + uniform_int(rng, 0, 2);
        bs.push_back(a + uniformizer_power(shift, sp.field()) * w);
      }
      if (perturb_check(es, bs, sp) != PerturbResult::Orthogonal) ++perturb_failures;
    }
    rep.checks.push_back({"orthogonal-systems", failures ? "fail" : "pass", std::to_string(samples) + " Gram-Schmidt outputs",
                          "countable type spaces have an orthogonal base", failures == 0});
    rep.checks.push_back({"decreasing-renormalization", renorm_failures ? "fail" : "pass", "",
                          "orthogonal base rescaled to strictly decreasing norms tending to 0", renorm_failures == 0});
    rep.checks.push_back({"perturbation", perturb_failures ? "fail" : "pass", "",
                          "small perturbations of orthogonal systems stay orthogonal", perturb_failures == 0});
  }

  {
    // Strictly decreasing norm walks; a well-ordered B forbids stagnation.
    std::size_t stagnating = 0;
    std::string witness;
    for (std::size_t k = 0; k < samples; ++k) {
      SequenceProbe probe{random_descent(B, XElement{B.sample(rng), 0}, rng()), 1000, 128};
      auto r = probe_sequence(sc, probe);
      if (r.verdict == ProbeVerdict::Stagnation && stagnating++ == 0) witness = detail::join_norms(r.stagnant_terms);
    }
    const bool ok = !wo || stagnating == 0;
    rep.checks.push_back({"decreasing-sequences", ok ? "pass" : "fail",
                          wo ? std::to_string(samples) + " walks, none stagnating" : witness,
                          "strictly decreasing norm sequences tend to 0 in a NHS", ok});
  }

  if (wo) {
    rep.checks.push_back({"descending-witness", "pass", "none: B admits no infinite descent",
                          "a NHS has no decreasing norm sequence confined to one copy g^m B", true});
  } else {
    SequenceProbe probe{in_class_descent(B, 0, 129), 129, 128};
    auto r = probe_sequence(sc, probe);
    const bool ok = r.verdict == ProbeVerdict::Stagnation && r.occupancy.size() == 1;
    rep.checks.push_back({"descending-witness", ok ? "pass" : "fail", detail::join_norms(r.stagnant_terms),
                          "an infinite descent in B gives a decreasing norm sequence not tending to 0", ok});
  }

  const bool c0 = contains_c0(sc);
  rep.checks.push_back({"contains-c0", c0 ? "true" : "false", "", "E contains c0 iff some orbit class is infinite", true});

  if (!nhs) {
    // An orthogonal base plus a decreasing sequence not tending to 0 rules out rigidity.
    rep.checks.push_back({"not-rigid", "true", "descriptor base is orthogonal and B is not well ordered",
                          "a non-NHS space with an orthogonal base is not rigid", true});
  }

  if (c0) {
    std::optional<ChainElement> cls;
    std::uint64_t best = 0;
    for (const auto& [b, m] : SpaceClass::from_space(sp).multiplicity)
      if (m.count > best) best = m.count, cls = b;
    if (cls && best >= 2) {
      auto demo = shift_isometry_demo(static_cast<std::size_t>(best - 1), XElement{*cls, 0}, sp, samples, seed);
      const bool ok = demo.is_isometry && !demo.is_surjective_on_truncation;
      rep.checks.push_back({"c0-shift", ok ? "pass" : "fail", "shift on " + std::to_string(best - 1) + " vectors",
                            "the shift on an orthogonal sequence of equal norms is a non-surjective isometry", ok});
    }
  }
  return rep;
}

}  // namespace ultranorm
