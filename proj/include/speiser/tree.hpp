#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace speiser {

using TreeVertexId = std::uint32_t;
inline constexpr TreeVertexId kNoTreeVertex = static_cast<TreeVertexId>(-1);

/// Truncation of the recurrent exponential-growth tree inside the 3-regular
/// tree: a ray v_0..v_N where each v_k (k >= 1) carries one extra neighbor
/// w_k with a complete binary subtree of depth k-1 below it. Equivalently:
/// the vertices u of the 3-regular tree whose distance to v_n is at most n
/// for all large n, cut at v_N. A vertex at distance m from its ray
/// attachment v_k satisfies m <= k, with equality exactly at the hang leaves.
struct PrunedTree {
    std::uint32_t ray_length = 0;            // N
    std::vector<TreeVertexId> ray;           // ray[k] = v_k
    std::vector<TreeVertexId> parent;        // toward v_N; v_N has kNoTreeVertex
    std::vector<std::vector<TreeVertexId>> children;
    std::vector<std::uint32_t> attach_k;     // ray index of the hang containing v
    std::vector<std::uint32_t> hang_depth;   // distance to the attachment (0 on the ray)

    std::size_t size() const { return parent.size(); }
    bool is_ray(TreeVertexId v) const { return hang_depth[v] == 0; }
    bool is_leaf(TreeVertexId v) const { return children[v].empty(); }
    std::size_t degree(TreeVertexId v) const {
        return children[v].size() + (parent[v] == kNoTreeVertex ? 0 : 1);
    }
};

/// Builds the truncation with ray v_0..v_N; every hang is complete, so the
/// only boundary contamination sits at v_N (its missing parent).
PrunedTree build_pruned_tree(std::uint32_t ray_length);

/// Unique vertex one step closer to the far end of the ray.
/// Throws std::domain_error at the truncation top v_N.
TreeVertexId tree_parent(const PrunedTree& t, TreeVertexId v);

/// Distances from u to every vertex (tree metric).
std::vector<std::uint32_t> tree_distances(const PrunedTree& t, TreeVertexId u);

/// JSON dump: ray length, per-vertex parent and depth labels.
std::string tree_to_json(const PrunedTree& t);

}  // namespace speiser
