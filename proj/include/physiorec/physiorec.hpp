#pragma once

// Umbrella header for the physiological-condition activity recommender.

#include "physiorec/conditions.hpp"
#include "physiorec/config.hpp"
#include "physiorec/error.hpp"
#include "physiorec/json_io.hpp"
#include "physiorec/learning.hpp"
#include "physiorec/recommender.hpp"
#include "physiorec/rng.hpp"
#include "physiorec/sensor_stream.hpp"
#include "physiorec/simulator.hpp"
#include "physiorec/types.hpp"
