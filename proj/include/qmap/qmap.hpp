#pragma once

#include "qmap/bench.hpp"
#include "qmap/bounds.hpp"
#include "qmap/circuit.hpp"
#include "qmap/error.hpp"
#include "qmap/hardware.hpp"
#include "qmap/oracle.hpp"
#include "qmap/rational.hpp"
#include "qmap/schedule.hpp"
#include "qmap/solver.hpp"
