#pragma once

// Everything except the CLI layer.

#include "orbicode/exact_linalg.hpp"
#include "orbicode/lattice.hpp"
#include "orbicode/ap_codes.hpp"
#include "orbicode/sigma_isometry.hpp"
#include "orbicode/code_search.hpp"
#include "orbicode/cocycles.hpp"
#include "orbicode/orbifold_qdim.hpp"
#include "orbicode/series.hpp"
#include "orbicode/qseries.hpp"
#include "orbicode/verify.hpp"
