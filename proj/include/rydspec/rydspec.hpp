#pragma once

// Umbrella header: angular algebra, microwave dressing, ladder EIT
// simulation, peak fitting and electrometry, plus the I/O helpers.

#include "rydspec/errors.hpp"
#include "rydspec/half_int.hpp"
#include "rydspec/rational_root.hpp"
#include "rydspec/wigner.hpp"
#include "rydspec/polarization.hpp"
#include "rydspec/constants.hpp"
#include "rydspec/basis.hpp"
#include "rydspec/coupling.hpp"
#include "rydspec/ladder.hpp"
#include "rydspec/lindblad.hpp"
#include "rydspec/spectrum.hpp"
#include "rydspec/peak_fit.hpp"
#include "rydspec/electrometry.hpp"
#include "rydspec/parallel.hpp"
