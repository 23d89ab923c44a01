#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ultranorm/ultranorm.hpp"

namespace testing_support {

using namespace ultranorm;

/// Space over Q_p with base e1..en and the given norms.
inline SpaceDescriptor make_space(std::int64_t p, const Chain& chain, const std::vector<XElement>& norms) {
  SpaceDescriptor sp{FieldConfig(p), GModule(chain)};
  for (std::size_t i = 0; i < norms.size(); ++i) sp.add_basis_vector("e" + std::to_string(i + 1), norms[i]);
  return sp;
}

/// n base vectors sharing the norm (b_0, g^0) of a one-point chain.
inline SpaceDescriptor equal_norm_space(std::int64_t p, std::size_t n) {
  return make_space(p, Chain::finite(1), std::vector<XElement>(n, XElement{ChainElement::finite(0), 0}));
}

/// Random space of dimension dim over Q_p whose norms use at most `classes`
/// orbit classes of a finite chain and exponents in [-mspread, mspread].
inline SpaceDescriptor random_space(Rng& rng, std::int64_t p, std::size_t dim, std::size_t classes,
                                    std::int64_t mspread = 2) {
  std::vector<XElement> norms;
  const auto top = static_cast<std::int64_t>(classes) - 1;
  for (std::size_t i = 0; i < dim; ++i)
    norms.push_back({ChainElement::finite(static_cast<std::uint64_t>(uniform_int(rng, 0, top))), uniform_int(rng, -mspread, mspread)});
  return make_space(p, Chain::finite(classes), norms);
}

/// Nonzero random vector with coordinate valuations in [vmin, vmax].
inline Vector random_nonzero(Rng& rng, const SpaceDescriptor& sp, std::int64_t vmin, std::int64_t vmax) {
  const auto support = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(sp.dim())));
  return random_vector(rng, sp, support, vmin, vmax);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string data_path(const std::string& name) { return std::string(ULTRANORM_DATA_DIR) + "/" + name; }

inline DescriptorFile load(const std::string& name) { return parse_descriptor(read_file(data_path(name))); }

inline Vector vec(const SpaceDescriptor& sp, const std::string& text) { return parse_vector(text, sp); }

}  // namespace testing_support
