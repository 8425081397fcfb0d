#pragma once

// Umbrella header for the library. The command-line layer (beltrami/cli.hpp)
// is left out because it pulls in CLI11.

#include "beltrami/errors.hpp"
#include "beltrami/params.hpp"
#include "beltrami/hyperbolic.hpp"
#include "beltrami/numdiff.hpp"
#include "beltrami/geometry.hpp"
#include "beltrami/model.hpp"
#include "beltrami/grid.hpp"
#include "beltrami/tridiagonal.hpp"
#include "beltrami/discretize.hpp"
#include "beltrami/spectrum.hpp"
#include "beltrami/nonhermitian.hpp"
#include "beltrami/profile.hpp"
#include "beltrami/scenarios.hpp"
#include "beltrami/io.hpp"
