#pragma once

// Umbrella header for the whole library.

#include "cde/bounds.hpp"
#include "cde/client_subset.hpp"
#include "cde/cut_function.hpp"
#include "cde/experiment.hpp"
#include "cde/feasibility.hpp"
#include "cde/guards.hpp"
#include "cde/instance.hpp"
#include "cde/instance_io.hpp"
#include "cde/packet_set.hpp"
#include "cde/partition.hpp"
#include "cde/rational.hpp"
#include "cde/rng.hpp"
