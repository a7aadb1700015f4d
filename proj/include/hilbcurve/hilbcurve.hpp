#pragma once

// Umbrella header: exact Hilbert-curve algebra for polarized manifolds.

#include "hilbcurve/rational.hpp"
#include "hilbcurve/unipoly.hpp"
#include "hilbcurve/bipoly.hpp"
#include "hilbcurve/linalg.hpp"
#include "hilbcurve/roots.hpp"
#include "hilbcurve/fanocore.hpp"
#include "hilbcurve/fibrations.hpp"
#include "hilbcurve/classify.hpp"
#include "hilbcurve/toric.hpp"
#include "hilbcurve/json_io.hpp"
#include "hilbcurve/render.hpp"
#include "hilbcurve/report.hpp"
