#pragma once

// Everything.

#include "bidim/error.hpp"
#include "bidim/validation.hpp"
#include "bidim/graph.hpp"
#include "bidim/structure.hpp"
#include "bidim/minor_oracle.hpp"
#include "bidim/models.hpp"
#include "bidim/grid.hpp"
#include "bidim/grid_transfer.hpp"
#include "bidim/gridminor.hpp"
#include "bidim/treewidth.hpp"
#include "bidim/vertex_cover.hpp"
#include "bidim/geometry.hpp"
#include "bidim/intersect.hpp"
#include "bidim/generators.hpp"
#include "bidim/experiment.hpp"
#include "bidim/json_io.hpp"
