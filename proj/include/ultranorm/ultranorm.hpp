#pragma once

#include "ultranorm/error.hpp"
#include "ultranorm/field.hpp"
#include "ultranorm/random.hpp"
#include "ultranorm/ordinal.hpp"
#include "ultranorm/chain.hpp"
#include "ultranorm/gmodule.hpp"
#include "ultranorm/space.hpp"
#include "ultranorm/classify.hpp"
#include "ultranorm/descriptor.hpp"

namespace ultranorm {

inline constexpr const char* version = "0.1.0";

}  // namespace ultranorm
