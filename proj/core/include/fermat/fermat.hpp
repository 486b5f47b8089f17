#pragma once

#include "fermat/error.hpp"
#include "fermat/exponent.hpp"
#include "fermat/fermat_real.hpp"
#include "fermat/format.hpp"
#include "fermat/oracle.hpp"
#include "fermat/parametric.hpp"
#include "fermat/polynomial.hpp"
#include "fermat/roots.hpp"
#include "fermat/scalar.hpp"
#include "fermat/slice_solver.hpp"
#include "fermat/smooth_ext.hpp"
#include "fermat/topology.hpp"
