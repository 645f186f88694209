#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "speiser/graph.hpp"
#include "speiser/tree.hpp"

namespace speiser {

inline constexpr HalfEdgeId kNoHalfEdge = std::numeric_limits<HalfEdgeId>::max();

struct AssemblyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Number of concentric rings in a leaf piece; constant or banded in the
/// tree distance from v_0 (s(v) = s0 + floor(d(v_0, v) / band)).
struct SchedulePolicy {
    enum class Mode { Constant, Banded } mode = Mode::Constant;
    std::uint32_t s0 = 2;
    std::uint32_t band = 4;

    static SchedulePolicy constant(std::uint32_t s) { return {Mode::Constant, s, 0}; }
    static SchedulePolicy banded(std::uint32_t s0, std::uint32_t band) {
        return {Mode::Banded, s0, band};
    }
    std::uint32_t s_of(const PrunedTree& t, TreeVertexId v) const {
        if (mode == Mode::Constant) return s0;
        std::uint32_t d = t.attach_k[v] + t.hang_depth[v];  // = d_T(v_0, v)
        return s0 + d / std::max<std::uint32_t>(1, band);
    }
    std::string str() const {
        if (mode == Mode::Constant) return "constant(" + std::to_string(s0) + ")";
        return "banded(" + std::to_string(s0) + "," + std::to_string(band) + ")";
    }
};

struct BuilderConfig {
    std::uint32_t ray_length = 4;    // N
    std::uint32_t circle_length = 8; // L; supported: 4 or any multiple of 4 >= 8
    SchedulePolicy schedule = SchedulePolicy::constant(2);
};

struct Piece {
    enum class Kind { Leaf, Pants } kind;
    TreeVertexId tree_vertex;
    std::uint32_t s = 0;                      // leaf only
    std::vector<VertexId> two_gon_vertices;   // leaf only: cap vertices on 2-gons
    std::vector<VertexId> hexagon_vertices;   // pants only: corners of the two hexagons
};

/// One boundary/pasting circle. Vertices are listed in the frame of the piece
/// that created the circle (the parent side); a child piece addresses position
/// p of its own frame as vertex[(p + child_offset) % L].
struct Circle {
    TreeVertexId tree_vertex = kNoTreeVertex;  // circle between this vertex and its parent
    std::vector<VertexId> vertices;
    std::uint32_t child_offset = 0;
    bool is_truncation_boundary = false;
};

struct Assembly {
    EmbeddedGraph graph;
    PrunedTree tree;
    BuilderConfig config;
    std::vector<Piece> pieces;                       // breadth-first piece order from v_N
    std::vector<Circle> circles;                     // indexed by tree vertex id
    std::vector<std::uint32_t> piece_of_vertex;      // owner piece index
    std::vector<HalfEdgeId> outward_half_edge;       // per vertex; kNoHalfEdge if none
    VertexId w0 = kNoVertex;                         // basepoint: position 0 of v_0's circle

    const Circle& circle_of(TreeVertexId v) const { return circles[v]; }
};

/// Pastes leaf and pants pieces along the tree into one degree-4 bipartite
/// graph with faces of 2, 4 and 6 edges. The truncation boundary is the outer
/// circle of the piece at v_N.
Assembly assemble(const PrunedTree& tree, const BuilderConfig& config);

/// Standalone gadgets (outer circle marked as boundary), mainly for unit
/// checks of the piece meshes.
struct GadgetPiece {
    EmbeddedGraph graph;
    Piece::Kind kind;
    std::uint32_t s = 0;
    std::vector<VertexId> outer;
    std::vector<std::vector<VertexId>> inner;
    std::vector<VertexId> two_gon_vertices;
    std::vector<VertexId> hexagon_vertices;
};

GadgetPiece leaf_gadget(std::uint32_t s, std::uint32_t circle_length);
GadgetPiece pants_gadget(std::uint32_t circle_length);

/// Number of 2-gons a leaf piece carries at this circle length.
std::uint32_t leaf_two_gon_count(std::uint32_t circle_length);

struct SigmaPair {
    VertexId positive;
    VertexId negative;
    std::uint32_t distance;
};

struct SigmaResult {
    std::vector<SigmaPair> pairs;  // one per trusted positive-excess vertex
    bool injective = false;
    bool distances_match_schedule = false;  // distance(w, sigma(w)) == s(owner leaf)
};

/// Maps every trusted positive-excess vertex to its nearest negative-excess
/// vertex (ties broken by smallest vertex id) and checks injectivity and the
/// distance contract. Throws AssemblyError when the trusted region contains
/// positives but no negatives (truncation too small).
SigmaResult sigma_map(const Assembly& a, const FaceSet& faces);

/// Nearest negative-excess vertex to one positive-excess vertex.
VertexId sigma_of(const Assembly& a, const FaceSet& faces, VertexId w);

}  // namespace speiser
