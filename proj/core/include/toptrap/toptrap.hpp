#pragma once

#include "toptrap/closed_form.hpp"
#include "toptrap/errors.hpp"
#include "toptrap/integrator.hpp"
#include "toptrap/spin_core.hpp"
#include "toptrap/sweep.hpp"
#include "toptrap/trap_geometry.hpp"
#include "toptrap/version.hpp"
