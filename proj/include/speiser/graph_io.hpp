#pragma once

#include <optional>
#include <string>

#include "speiser/builder.hpp"
#include "speiser/graph.hpp"

namespace speiser {

/// JSON dump of a frozen graph: vertices with rotations and parities, faces,
/// boundary marks. Integers only, round-trip exact. When an Assembly is
/// given, builder metadata (tree, pieces, circles, basepoint) is included and
/// restored on load.
std::string graph_to_json(const EmbeddedGraph& g, const FaceSet* faces = nullptr,
                          const Assembly* assembly = nullptr);

struct LoadedGraph {
    EmbeddedGraph graph;
    std::optional<Assembly> assembly;  // present when the dump carried metadata
};

LoadedGraph graph_from_json(const std::string& text);

/// DOT export: one node per vertex with its parity attribute, one edge per
/// twin pair.
std::string graph_to_dot(const EmbeddedGraph& g);

}  // namespace speiser
