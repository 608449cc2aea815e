#pragma once

#include "smeared/deformed_algebra.hpp"
#include "smeared/errors.hpp"
#include "smeared/exclusion_bounds.hpp"
#include "smeared/hydrogen_analytic.hpp"
#include "smeared/numeric_oracle.hpp"
#include "smeared/report.hpp"
#include "smeared/units_constants.hpp"
