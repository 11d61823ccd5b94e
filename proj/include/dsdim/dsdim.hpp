#pragma once

// Umbrella header: exact bivariate dimension polynomials of linear
// difference-differential ideals with several derivations and one
// translation, plus the supporting term algebra, reduction machinery and
// elimination oracle.

#include "dsdim/bigint.hpp"
#include "dsdim/dimension.hpp"
#include "dsdim/dpoly.hpp"
#include "dsdim/errors.hpp"
#include "dsdim/json_io.hpp"
#include "dsdim/lattice.hpp"
#include "dsdim/numpoly.hpp"
#include "dsdim/oracle.hpp"
#include "dsdim/parser.hpp"
#include "dsdim/reduction.hpp"
#include "dsdim/termalg.hpp"
