#pragma once

// Umbrella header: the full smoothing library.

#include "whitsel/banded.hpp"      // IWYU pragma: export
#include "whitsel/benchmark.hpp"   // IWYU pragma: export
#include "whitsel/csv.hpp"         // IWYU pragma: export
#include "whitsel/difference.hpp"  // IWYU pragma: export
#include "whitsel/errors.hpp"      // IWYU pragma: export
#include "whitsel/format.hpp"      // IWYU pragma: export
#include "whitsel/rng.hpp"         // IWYU pragma: export
#include "whitsel/selectors.hpp"   // IWYU pragma: export
#include "whitsel/signal.hpp"      // IWYU pragma: export
#include "whitsel/smoother.hpp"    // IWYU pragma: export
#include "whitsel/spectral.hpp"    // IWYU pragma: export
#include "whitsel/svg.hpp"         // IWYU pragma: export
