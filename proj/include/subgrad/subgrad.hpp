#pragma once

#include "subgrad/algorithms.hpp"
#include "subgrad/brute_force.hpp"
#include "subgrad/config.hpp"
#include "subgrad/costs.hpp"
#include "subgrad/csv.hpp"
#include "subgrad/errors.hpp"
#include "subgrad/geometry.hpp"
#include "subgrad/harness.hpp"
#include "subgrad/metrics.hpp"
#include "subgrad/parallel.hpp"
#include "subgrad/point.hpp"
#include "subgrad/record.hpp"
