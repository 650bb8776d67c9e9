#pragma once

#include "nervekit/rational.hpp"
#include "nervekit/space.hpp"
#include "nervekit/arc_union.hpp"
#include "nervekit/box_union.hpp"
#include "nervekit/grid_region.hpp"
#include "nervekit/point_set.hpp"
#include "nervekit/cover.hpp"
#include "nervekit/nerve.hpp"
#include "nervekit/homology.hpp"
#include "nervekit/irreducible.hpp"
#include "nervekit/dynamics.hpp"
#include "nervekit/riemann_bounds.hpp"
#include "nervekit/realization.hpp"
#include "nervekit/scenarios.hpp"
#include "nervekit/io.hpp"
