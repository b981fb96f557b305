#pragma once

// Umbrella header: the whole library in one include.

#include "ptkitaev/analytic.hpp"
#include "ptkitaev/eigensolver.hpp"
#include "ptkitaev/ep.hpp"
#include "ptkitaev/errors.hpp"
#include "ptkitaev/model.hpp"
#include "ptkitaev/parallel.hpp"
#include "ptkitaev/params.hpp"
#include "ptkitaev/spectral.hpp"
#include "ptkitaev/sweep.hpp"
#include "ptkitaev/types.hpp"
