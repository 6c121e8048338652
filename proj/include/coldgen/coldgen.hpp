#pragma once

#include "coldgen/design_loop.hpp"
#include "coldgen/errors.hpp"
#include "coldgen/field.hpp"
#include "coldgen/geometry.hpp"
#include "coldgen/io_report.hpp"
#include "coldgen/parallel.hpp"
#include "coldgen/rd_generator.hpp"
#include "coldgen/thermal_solver.hpp"
