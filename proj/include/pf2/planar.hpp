#pragma once

#include "pf2/audit.hpp"
#include "pf2/criteria.hpp"
#include "pf2/dopoly.hpp"
#include "pf2/families.hpp"
#include "pf2/planarity.hpp"
