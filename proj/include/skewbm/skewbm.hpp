#pragma once

#include "skewbm/density.hpp"
#include "skewbm/errors.hpp"
#include "skewbm/histogram.hpp"
#include "skewbm/path_sim.hpp"
#include "skewbm/quadrature.hpp"
#include "skewbm/rng.hpp"
#include "skewbm/sampler.hpp"
#include "skewbm/stats.hpp"
#include "skewbm/verify.hpp"
#include "skewbm/version.hpp"
