#pragma once

#include "disklab/angular_limits.hpp"
#include "disklab/boundary.hpp"
#include "disklab/const_arg_paths.hpp"
#include "disklab/disk_geometry.hpp"
#include "disklab/error.hpp"
#include "disklab/harmonic_map.hpp"
#include "disklab/json_io.hpp"
#include "disklab/map_spec.hpp"
#include "disklab/poisson.hpp"
#include "disklab/render.hpp"
#include "disklab/zero_analysis.hpp"
