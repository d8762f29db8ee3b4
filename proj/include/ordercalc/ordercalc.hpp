#pragma once

#include "ordercalc/cardinals.hpp"
#include "ordercalc/chain.hpp"
#include "ordercalc/codes.hpp"
#include "ordercalc/finite_oracle.hpp"
#include "ordercalc/json_io.hpp"
#include "ordercalc/parser.hpp"
#include "ordercalc/props.hpp"
#include "ordercalc/terms.hpp"
#include "ordercalc/topology.hpp"
