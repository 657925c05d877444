#pragma once

#include "preisach/butterfly.hpp"
#include "preisach/controller.hpp"
#include "preisach/errors.hpp"
#include "preisach/gaussian_mixture.hpp"
#include "preisach/geometry.hpp"
#include "preisach/grid_csv.hpp"
#include "preisach/grid_field.hpp"
#include "preisach/interface_json.hpp"
#include "preisach/memory_interface.hpp"
#include "preisach/pulse.hpp"
#include "preisach/relay_grid.hpp"
#include "preisach/remnant.hpp"
#include "preisach/sector_bounds.hpp"
#include "preisach/staircase_integration.hpp"
#include "preisach/weighting_field.hpp"
