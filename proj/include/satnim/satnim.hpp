#pragma once

// Umbrella header.

#include "satnim/formulas.hpp"
#include "satnim/games.hpp"
#include "satnim/mixed_radix.hpp"
#include "satnim/saturation.hpp"
#include "satnim/solver.hpp"
