#pragma once

// Umbrella header.

#include "dynmincut/random.hpp"
#include "dynmincut/graph.hpp"
#include "dynmincut/stable_sampler.hpp"
#include "dynmincut/dynamic_forest.hpp"
#include "dynmincut/forest_packing.hpp"
#include "dynmincut/static_mincut.hpp"
#include "dynmincut/star_contraction.hpp"
#include "dynmincut/engine.hpp"
#include "dynmincut/stream.hpp"
#include "dynmincut/generators.hpp"
#include "dynmincut/driver.hpp"
