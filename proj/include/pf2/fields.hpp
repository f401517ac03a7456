#pragma once

#include "pf2/gf2n.hpp"
#include "pf2/tower.hpp"
