#pragma once

#include "dualhop/diversity.hpp"
#include "dualhop/fading.hpp"
#include "dualhop/montecarlo.hpp"
#include "dualhop/numerics.hpp"
#include "dualhop/random.hpp"
#include "dualhop/relay.hpp"
#include "dualhop/ser.hpp"
