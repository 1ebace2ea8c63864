#pragma once

// Pseudo-spectral simulator and diagnostics for 2D capillary-gravity water
// waves in conformal coordinates. Single umbrella include.

#include "brackets.hpp"
#include "energy.hpp"
#include "errors.hpp"
#include "evolution.hpp"
#include "fft.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "spectral.hpp"
#include "state.hpp"
