#pragma once

#include "dpsolid/catalog.hpp"
#include "dpsolid/components.hpp"
#include "dpsolid/constants.hpp"
#include "dpsolid/detector.hpp"
#include "dpsolid/dp_core.hpp"
#include "dpsolid/materials.hpp"
#include "dpsolid/oracle.hpp"
#include "dpsolid/report.hpp"
#include "dpsolid/scenario.hpp"
#include "dpsolid/units.hpp"
