#pragma once

#include <string>

#include "adhesia/graph.hpp"

namespace adhesia {

/// Graphviz rendering. Containers become clusters nested along the contains
/// map (a member shared by several containers is drawn in the first one and
/// linked by dashed arcs from the others); edges become box nodes with
/// incidence arcs, directed from the first to the second pair component.
std::string export_dot(const CoalgGraph& G);

}  // namespace adhesia
