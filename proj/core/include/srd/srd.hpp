#pragma once

#include "srd/channels.hpp"
#include "srd/conditional.hpp"
#include "srd/divergences.hpp"
#include "srd/dpi.hpp"
#include "srd/entanglement.hpp"
#include "srd/errors.hpp"
#include "srd/linalg.hpp"
#include "srd/random.hpp"
#include "srd/states.hpp"

namespace srd {
inline constexpr const char* kVersion = "0.1.0";
}
