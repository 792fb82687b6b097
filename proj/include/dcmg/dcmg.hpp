/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "dcmg/battery.hpp"
#include "dcmg/bus_load.hpp"
#include "dcmg/control.hpp"
#include "dcmg/converters.hpp"
#include "dcmg/csv.hpp"
#include "dcmg/defaults.hpp"
#include "dcmg/errors.hpp"
#include "dcmg/fuel_cell.hpp"
#include "dcmg/integrator.hpp"
#include "dcmg/plot_svg.hpp"
#include "dcmg/pv.hpp"
#include "dcmg/pwm.hpp"
#include "dcmg/scenario.hpp"
#include "dcmg/scenario_json.hpp"
#include "dcmg/simulation.hpp"
#include "dcmg/trace.hpp"
