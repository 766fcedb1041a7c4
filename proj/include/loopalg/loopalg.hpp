#pragma once

#include "loopalg/rational.hpp"
#include "loopalg/graded_ring.hpp"
#include "loopalg/duality.hpp"
#include "loopalg/report.hpp"
#include "loopalg/spaces.hpp"
#include "loopalg/string_topology.hpp"
