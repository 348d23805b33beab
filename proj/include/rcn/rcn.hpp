#pragma once

#include "rcn/blowup.hpp"
#include "rcn/compose/compose.hpp"
#include "rcn/cliquesum.hpp"
#include "rcn/decomposition/cliquesum_ops.hpp"
#include "rcn/decomposition/tree_decomposition_ops.hpp"
#include "rcn/generators/generators.hpp"
#include "rcn/geometry/crossings.hpp"
#include "rcn/geometry/disk.hpp"
#include "rcn/geometry/drawing.hpp"
#include "rcn/geometry/general_position.hpp"
#include "rcn/geometry/point.hpp"
#include "rcn/geometry/predicates.hpp"
#include "rcn/graph.hpp"
#include "rcn/hpartition/builders.hpp"
#include "rcn/hpartition/hpartition.hpp"
#include "rcn/io/formats.hpp"
#include "rcn/io/report.hpp"
#include "rcn/io/svg.hpp"
#include "rcn/planar/embedding.hpp"
#include "rcn/planar/fary.hpp"
#include "rcn/planar/separating.hpp"
#include "rcn/tree_decomposition.hpp"
