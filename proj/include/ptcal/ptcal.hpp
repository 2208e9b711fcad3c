#pragma once
// Umbrella header for the full toolkit.

#include "ptcal/core.hpp"      // IWYU pragma: export
#include "ptcal/rng.hpp"       // IWYU pragma: export
#include "ptcal/pt.hpp"        // IWYU pragma: export
#include "ptcal/calibrate.hpp" // IWYU pragma: export
#include "ptcal/metrics.hpp"   // IWYU pragma: export
#include "ptcal/synth.hpp"     // IWYU pragma: export
#include "ptcal/sim.hpp"       // IWYU pragma: export
#include "ptcal/io.hpp"        // IWYU pragma: export
