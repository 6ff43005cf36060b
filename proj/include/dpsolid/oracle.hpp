#pragma once

#include "dpsolid/oracle/checks.hpp"
#include "dpsolid/oracle/dp_energy.hpp"
#include "dpsolid/oracle/field_form.hpp"
#include "dpsolid/oracle/interference.hpp"
#include "dpsolid/oracle/separation.hpp"
