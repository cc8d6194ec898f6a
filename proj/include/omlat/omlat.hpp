#pragma once

// Umbrella header.

#include "omlat/cone.hpp"
#include "omlat/error.hpp"
#include "omlat/families.hpp"
#include "omlat/groemer.hpp"
#include "omlat/indicators.hpp"
#include "omlat/io.hpp"
#include "omlat/lattice.hpp"
#include "omlat/limits.hpp"
#include "omlat/matrix.hpp"
#include "omlat/measure.hpp"
#include "omlat/measure_module.hpp"
#include "omlat/numeric.hpp"
#include "omlat/smith.hpp"
#include "omlat/states.hpp"
#include "omlat/symmetry.hpp"
#include "omlat/version.hpp"
