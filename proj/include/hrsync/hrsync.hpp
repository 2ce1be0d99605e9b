#pragma once

#include "hrsync/analysis.hpp"
#include "hrsync/commands.hpp"
#include "hrsync/config.hpp"
#include "hrsync/energy.hpp"
#include "hrsync/errors.hpp"
#include "hrsync/io.hpp"
#include "hrsync/model.hpp"
#include "hrsync/rk4.hpp"
#include "hrsync/sim.hpp"
#include "hrsync/svg.hpp"
