#pragma once

#include "pf2/audit.hpp"
#include "pf2/criteria.hpp"
#include "pf2/dopoly.hpp"
#include "pf2/errors.hpp"
#include "pf2/families.hpp"
#include "pf2/fields.hpp"
#include "pf2/io.hpp"
#include "pf2/linearized.hpp"
#include "pf2/mvpoly.hpp"
#include "pf2/planarity.hpp"
#include "pf2/semifields.hpp"
#include "pf2/surfaces.hpp"

namespace pf2 {
inline constexpr const char* kVersion = "1.0.0";
}
