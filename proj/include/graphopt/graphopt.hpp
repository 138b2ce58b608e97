#pragma once

#include "graphopt/annealing.hpp"
#include "graphopt/bandit.hpp"
#include "graphopt/convexity.hpp"
#include "graphopt/descend.hpp"
#include "graphopt/exact.hpp"
#include "graphopt/graph.hpp"
#include "graphopt/graph_io.hpp"
#include "graphopt/grid.hpp"
#include "graphopt/harness.hpp"
#include "graphopt/nnsearch.hpp"
#include "graphopt/oracle.hpp"
#include "graphopt/parallel.hpp"
#include "graphopt/points.hpp"
#include "graphopt/record.hpp"
#include "graphopt/rng.hpp"
#include "graphopt/values.hpp"
