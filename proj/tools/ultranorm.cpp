// ultranorm: classify and probe X-normed spaces described by .space files.
//
// Exit codes: 0 success, 1 negative verdict under --expect (or failing suite
// checks), 2 parse error, 3 precondition violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ultranorm/ultranorm.hpp"

namespace un = ultranorm;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kParseError = 2;
constexpr int kPrecondition = 3;

un::DescriptorFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw un::ParseError(0, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return un::parse_descriptor(buf.str());
}

void emit(const un::Report& report, bool json) {
  if (json) {
    nlohmann::json out;
    out["tool_version"] = un::version;
    out["command"] = report.command;
    out["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks) {
      out["checks"].push_back({{"name", c.name},
                               {"verdict", c.verdict},
                               {"witness", c.witness.empty() ? nlohmann::json(nullptr) : nlohmann::json(c.witness)},
                               {"paper_ref", c.ref}});
    }
    std::cout << out.dump(2) << "\n";
    return;
  }
  for (const auto& c : report.checks) {
    std::cout << c.name << ": " << c.verdict;
    if (!c.witness.empty()) {
      if (c.witness.find('\n') != std::string::npos)
        std::cout << "\n" << c.witness;
      else
        std::cout << "  [" << c.witness << "]";
    }
    std::cout << "\n";
  }
}

std::optional<bool> parse_expect(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "true") return true;
  if (s == "false") return false;
  throw un::ParseError(0, "--expect takes true or false");
}

std::string join(const std::vector<un::XElement>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " > " : "") + xs[i].to_string();
  return out;
}

int cmd_classify(const std::string& path, bool json, const std::string& expect) {
  const auto want = parse_expect(expect);
  const auto file = load(path);
  const auto sc = file.space_class();
  const auto& B = sc.chain;
  un::Report rep{"classify", {}};
  const bool nhs = un::is_nhs(sc);
  rep.checks.push_back({"chain_verdict", un::to_string(B.is_well_ordered()), B.descriptor(), "well-orderedness of the convex base B"});
  rep.checks.push_back({"nhs", nhs ? "true" : "false", "", "E is a NHS iff B is well ordered"});
  rep.checks.push_back({"contains_c0", un::contains_c0(sc) ? "true" : "false", "",
                        "E contains c0 iff some orbit class carries infinitely many base vectors"});
  const un::XElement a{B.some_element(), 0};
  rep.checks.push_back({"nhs_from_point", un::is_nhs_from_point(sc, a) ? "true" : "false", a.to_string(),
                        "E is a NHS iff [a, g a) is well ordered"});
  if (B.is_well_ordered() == un::WellOrdered::No) {
    std::vector<un::XElement> w;
    for (auto& b : B.descending_witness(5)) w.push_back({b, 0});
    rep.checks.push_back({"descending_witness", "found", join(w) + " > ...",
                          "an infinite descent in B blocks the NHS property"});
  }
  emit(rep, json);
  return want && *want != nhs ? kNegative : kOk;
}

int cmd_gs(const std::string& path, const std::vector<std::string>& names, bool json) {
  const auto file = load(path);
  std::vector<un::Vector> vs;
  for (const auto& n : names) vs.push_back(file.resolve(n));
  un::Report rep{"gs", {}};
  try {
    const auto gs = un::gram_schmidt(vs, file.space);
    for (std::size_t k = 0; k < gs.basis.size(); ++k)
      rep.checks.push_back({"e" + std::to_string(k + 1), file.space.format(gs.basis[k]),
                            "norm " + un::to_string(un::norm(gs.basis[k], file.space)),
                            "e_{n+1} orthogonal to span(e_1..e_n) with equal spans"});
    std::string mu;
    for (std::size_t k = 0; k < gs.mu.size(); ++k) {
      mu += k ? "; " : "";
      for (std::size_t j = 0; j < gs.mu[k].size(); ++j) mu += (j ? " " : "") + gs.mu[k][j].pretty();
    }
    rep.checks.push_back({"change_of_basis", "unit-lower-triangular", mu, "input = mu * output"});
    const bool ok = un::is_orthogonal_system(gs.basis, file.space);
    rep.checks.push_back({"orthogonal", ok ? "pass" : "fail", "", "output is an orthogonal system", ok});
  } catch (const un::IndexedError& e) {
    if (e.kind() != un::ErrorKind::LinearlyDependent) throw;
    rep.checks.push_back({"linearly_dependent", "error", names.at(e.index()), "input must be linearly independent", false});
    emit(rep, json);
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  }
  emit(rep, json);
  return rep.all_passed() ? kOk : kNegative;
}

std::function<std::optional<un::XElement>()> make_generator(const std::string& spec, const un::DescriptorFile& file,
                                                             std::size_t steps) {
  const auto& B = file.chain;
  const un::GModule& X = file.space.module();
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "geometric") return un::geometric_descent(arg.empty() ? un::XElement{B.some_element(), 0} : X.parse_element(arg));
  if (kind == "inclass") return un::in_class_descent(B, arg.empty() ? 0 : un::GModule::parse_exponent(arg), steps);
  if (kind == "random") {
    const std::uint64_t seed = arg.empty() ? 0 : std::stoull(arg);
    return un::random_descent(B, un::XElement{B.some_element(), 0}, seed);
  }
  if (kind == "list") {
    std::vector<un::XElement> terms;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ';'))
      if (!item.empty()) terms.push_back(X.parse_element(item));
    return un::scripted(std::move(terms));
  }
  throw un::ParseError(0, "unknown generator '" + spec + "' (use geometric[:x], inclass[:m], random[:seed], list:x;y;...)");
}

int cmd_probe(const std::string& path, const std::string& gen, std::size_t steps, std::size_t bound, bool json) {
  const auto file = load(path);
  const auto sc = file.space_class();
  un::SequenceProbe probe{make_generator(gen, file, steps), steps, bound};
  un::ProbeReport r;
  try {
    r = un::probe_sequence(sc, probe);
  } catch (const un::IndexedError& e) {
    if (e.kind() != un::ErrorKind::NotDecreasing) throw;
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  }
  un::Report rep{"probe", {}};
  std::string table;
  for (auto it = r.occupancy.rbegin(); it != r.occupancy.rend(); ++it)
    table += (table.empty() ? "" : "\n") + std::string("  g^") + std::to_string(it->first) + " B: " + std::to_string(it->second);
  rep.checks.push_back({"occupancy", std::to_string(r.steps) + " terms", table, "terms per copy g^m B"});
  std::string witness;
  if (r.stagnant_class) {
    std::vector<un::XElement> head(r.stagnant_terms.begin(),
                                   r.stagnant_terms.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(5, r.stagnant_terms.size())));
    witness = "class g^" + std::to_string(*r.stagnant_class) + ": " + join(head) + " > ...";
  }
  rep.checks.push_back({"verdict", un::to_string(r.verdict), witness,
                        "strictly decreasing norms leave every g^m B when B is well ordered", r.consistent_with_chain});
  emit(rep, json);
  return kOk;
}

int cmd_suite(const std::string& path, std::size_t samples, std::uint64_t seed, bool json) {
  const auto file = load(path);
  const auto rep = un::nhs_suite(file.space, file.space_class(), samples, seed);
  emit(rep, json);
  return rep.all_passed() ? kOk : kNegative;
}

int cmd_demo_shift(const std::string& path, std::size_t n, const std::string& norm_text, std::size_t samples, bool json) {
  const auto file = load(path);
  const auto& sp = file.space;
  un::XElement s{file.chain.some_element(), 0};
  if (!norm_text.empty()) {
    s = sp.module().parse_element(norm_text);
  } else if (sp.dim() > 0) {
    // Default to the most populated orbit class.
    std::uint64_t best = 0;
    for (const auto& [b, m] : un::SpaceClass::from_space(sp).multiplicity)
      if (m.count > best) best = m.count, s = un::XElement{b, 0};
  }
  const auto demo = un::shift_isometry_demo(n, s, sp, samples);
  un::Report rep{"demo-shift", {}};
  rep.checks.push_back({"shift", "n=" + std::to_string(n), demo.description, "T a_k = a_{k+1} on an equal-norm orthogonal sequence"});
  rep.checks.push_back({"is_isometry", demo.is_isometry ? "true" : "false", "", "||T v|| = ||v|| on the truncation"});
  rep.checks.push_back({"is_surjective_on_truncation", demo.is_surjective_on_truncation ? "true" : "false",
                        "rank " + std::to_string(demo.shift.rank()) + " of " + std::to_string(n + 1),
                        "the shift misses a_1, so it is not surjective"});
  emit(rep, json);
  return kOk;
}

int cmd_phi(const std::string& path, const std::string& x, const std::string& x0, bool json) {
  const auto file = load(path);
  const auto& X = file.space.module();
  const auto xe = X.parse_element(x);
  const auto x0e = X.parse_element(x0);
  const auto g = X.phi(xe, x0e);
  const auto [rep_elem, k] = X.canonical_rep(xe, x0e);
  un::Report rep{"phi", {}};
  rep.checks.push_back({"phi", g.to_string(), "", "phi(x) = max{g in G : g x0 <= x}"});
  rep.checks.push_back({"canonical_rep", rep_elem.to_string(), "k=" + std::to_string(k), "x = g^k rep with rep in [x0, g x0)"});
  emit(rep, json);
  return kOk;
}

int cmd_dist(const std::string& path, const std::vector<std::string>& names, bool json) {
  const auto file = load(path);
  if (names.size() < 2) throw un::ParseError(0, "dist needs a vector and at least one generator");
  const auto v = file.resolve(names[0]);
  std::vector<un::Vector> D;
  for (std::size_t i = 1; i < names.size(); ++i) D.push_back(file.resolve(names[i]));
  un::Report rep{"dist", {}};
  if (D.size() == 1) {
    const auto d = un::distance_to_line(v, D[0], file.space);
    rep.checks.push_back({"distance", un::to_string(d.dist), "lambda=" + d.witness.pretty(), "min over lambda of ||u - lambda v||"});
  } else {
    const auto d = un::distance_to_subspace(v, D, file.space);
    rep.checks.push_back({"distance", un::to_string(d.dist), "best=" + file.space.format(d.best),
                          "min over d in span D of ||v - d||"});
  }
  emit(rep, json);
  return kOk;
}

int cmd_check_ortho(const std::string& path, const std::vector<std::string>& names, bool json, const std::string& expect) {
  const auto want = parse_expect(expect);
  const auto file = load(path);
  std::vector<un::Vector> vs;
  for (const auto& n : names) vs.push_back(file.resolve(n));
  const bool ok = vs.size() == 2 ? un::is_orthogonal_pair(vs[0], vs[1], file.space) : un::is_orthogonal_system(vs, file.space);
  un::Report rep{"check-ortho", {}};
  rep.checks.push_back({"orthogonal", ok ? "true" : "false", "", "||sum a_i v_i|| = max ||a_i v_i|| for all scalars"});
  emit(rep, json);
  return want && *want != ok ? kNegative : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact non-archimedean normed spaces over G-modules B x G"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", un::version);
  bool json = false;
  app.add_flag("--json", json, "Emit the machine-readable report");

  std::string file;
  std::string expect;
  std::vector<std::string> vectors;
  std::string gen = "geometric";
  std::size_t steps = 1000;
  std::size_t bound = 128;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::size_t shift_n = 3;
  std::string shift_norm;
  std::string x, x0;

  auto* classify = app.add_subcommand("classify", "NHS and c0 verdicts for a space");
  classify->add_option("file", file)->required();
  classify->add_option("--expect", expect, "Expected nhs verdict (true|false); exit 1 on mismatch");

  auto* gs = app.add_subcommand("gs", "Orthogonalize vectors (names or literals)");
  gs->add_option("file", file)->required();
  gs->add_option("vectors", vectors)->required();

  auto* probe = app.add_subcommand("probe", "Track a strictly decreasing norm sequence across copies g^m B");
  probe->add_option("file", file)->required();
  probe->add_option("--gen", gen, "geometric[:x] | inclass[:m] | random[:seed] | list:x;y;...");
  probe->add_option("--steps", steps, "Maximum number of terms");
  probe->add_option("--bound", bound, "Occupancy above which a class counts as stagnating");

  auto* suite = app.add_subcommand("suite", "Randomized NHS surrogate checks on the truncation");
  suite->add_option("file", file)->required();
  suite->add_option("--samples", samples);
  suite->add_option("--seed", seed);

  auto* demo = app.add_subcommand("demo-shift", "Shift isometry on an equal-norm orthogonal sequence");
  demo->add_option("file", file)->required();
  demo->add_option("-n", shift_n, "Length of the shifted truncation");
  demo->add_option("--norm", shift_norm, "Common norm s, e.g. \"(b@0, g^0)\"");
  demo->add_option("--samples", samples);

  auto* phi = app.add_subcommand("phi", "phi(x) relative to x0, and the canonical representative");
  phi->add_option("file", file)->required();
  phi->add_option("x", x)->required();
  phi->add_option("x0", x0)->required();

  auto* dist = app.add_subcommand("dist", "Distance from a vector to a line or an orthogonal span");
  dist->add_option("file", file)->required();
  dist->add_option("vectors", vectors)->required();

  auto* ortho = app.add_subcommand("check-ortho", "Decide orthogonality of a pair or a system");
  ortho->add_option("file", file)->required();
  ortho->add_option("vectors", vectors)->required();
  ortho->add_option("--expect", expect, "Expected verdict (true|false); exit 1 on mismatch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*classify) return cmd_classify(file, json, expect);
    if (*gs) return cmd_gs(file, vectors, json);
    if (*probe) return cmd_probe(file, gen, steps, bound, json);
    if (*suite) return cmd_suite(file, samples, seed, json);
    if (*demo) return cmd_demo_shift(file, shift_n, shift_norm, samples, json);
    if (*phi) return cmd_phi(file, x, x0, json);
    if (*dist) return cmd_dist(file, vectors, json);
    if (*ortho) return cmd_check_ortho(file, vectors, json, expect);
  } catch (const un::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const un::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  }
  return kOk;
}
