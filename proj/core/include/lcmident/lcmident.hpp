#pragma once

#include "lcmident/coeff_map.hpp"
#include "lcmident/dual.hpp"
#include "lcmident/errors.hpp"
#include "lcmident/graph.hpp"
#include "lcmident/ident.hpp"
#include "lcmident/io.hpp"
#include "lcmident/matrix.hpp"
#include "lcmident/model.hpp"
#include "lcmident/polynomial.hpp"
#include "lcmident/rational.hpp"
#include "lcmident/rng.hpp"
#include "lcmident/transforms.hpp"
