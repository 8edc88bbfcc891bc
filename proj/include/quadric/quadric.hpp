#pragma once

#include "quadric/acm.hpp"
#include "quadric/bigraded.hpp"
#include "quadric/engine.hpp"
#include "quadric/errors.hpp"
#include "quadric/exact.hpp"
#include "quadric/fp.hpp"
#include "quadric/grid.hpp"
#include "quadric/matrix_io.hpp"
#include "quadric/oracle.hpp"
#include "quadric/rank.hpp"
#include "quadric/replay.hpp"
#include "quadric/rng.hpp"
