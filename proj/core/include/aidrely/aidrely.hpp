#pragma once

#include "aidrely/analytic.hpp"
#include "aidrely/model.hpp"
#include "aidrely/probability.hpp"
#include "aidrely/scenario_json.hpp"
#include "aidrely/simulate.hpp"
#include "aidrely/sweep.hpp"
#include "aidrely/version.hpp"
