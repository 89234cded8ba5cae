#pragma once

#include "flockvi/csv.hpp"
#include "flockvi/diagnostics.hpp"
#include "flockvi/dynamics.hpp"
#include "flockvi/errors.hpp"
#include "flockvi/graph.hpp"
#include "flockvi/integrators.hpp"
#include "flockvi/propagator.hpp"
#include "flockvi/scenario.hpp"
#include "flockvi/simulation.hpp"
#include "flockvi/stacked.hpp"
#include "flockvi/svg.hpp"
#include "flockvi/verification.hpp"
