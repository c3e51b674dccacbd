#pragma once

// Umbrella header.

#include "latsum/bernoulli.hpp"
#include "latsum/catalog.hpp"
#include "latsum/character.hpp"
#include "latsum/constants.hpp"
#include "latsum/errors.hpp"
#include "latsum/expansions.hpp"
#include "latsum/expr.hpp"
#include "latsum/format.hpp"
#include "latsum/gamma.hpp"
#include "latsum/hurwitz.hpp"
#include "latsum/lseries.hpp"
#include "latsum/mellin.hpp"
#include "latsum/quadrature.hpp"
#include "latsum/rational.hpp"
#include "latsum/root_of_unity.hpp"
#include "latsum/sums.hpp"
#include "latsum/theta.hpp"
#include "latsum/unit_group.hpp"
