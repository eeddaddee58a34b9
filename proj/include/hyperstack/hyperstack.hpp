#pragma once

#include "hyperstack/error.hpp"
#include "hyperstack/local_sing.hpp"
#include "hyperstack/curve_graph.hpp"
#include "hyperstack/involution.hpp"
#include "hyperstack/cover.hpp"
#include "hyperstack/cohomology.hpp"
#include "hyperstack/canonical.hpp"
#include "hyperstack/enumerate.hpp"
#include "hyperstack/json_io.hpp"
