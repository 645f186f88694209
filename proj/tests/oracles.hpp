#pragma once

// Independent reference constructions and checkers for the test suites.
// Everything here is deliberately written against the public graph API only,
// with its own algorithms, so that library results can be checked against a
// second route.

#include <cstdint>
#include <map>
#include <vector>

#include "speiser/graph.hpp"

namespace oracles {

using namespace speiser;

/// n x n square-grid truncation: rotations counterclockwise
/// [right, up, left, down], border edges marked as truncation boundary.
/// Optionally doubles one horizontal border-adjacent edge (for locality
/// tests); the copy is inserted next to the original so a 2-gon forms.
inline EmbeddedGraph make_grid(std::uint32_t n, bool far_double = false) {
    EmbeddedGraph g;
    constexpr HalfEdgeId kNone = std::numeric_limits<HalfEdgeId>::max();
    auto id = [n](std::uint32_t i, std::uint32_t j) { return j * n + i; };
    for (std::uint32_t v = 0; v < n * n; ++v) g.add_vertex();

    // slot 0=right,1=up,2=left,3=down per vertex
    std::vector<std::array<HalfEdgeId, 4>> slot(n * n, {kNone, kNone, kNone, kNone});
    std::vector<HalfEdgeId> border;
    for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t i = 0; i < n; ++i) {
            if (i + 1 < n) {
                HalfEdgeId h = g.add_edge(id(i, j), id(i + 1, j));
                slot[id(i, j)][0] = h;
                slot[id(i + 1, j)][2] = h ^ 1;
                if (j == 0 || j == n - 1) border.push_back(h);
            }
            if (j + 1 < n) {
                HalfEdgeId h = g.add_edge(id(i, j), id(i, j + 1));
                slot[id(i, j)][1] = h;
                slot[id(i, j + 1)][3] = h ^ 1;
                if (i == 0 || i == n - 1) border.push_back(h);
            }
        }

    // Optional parallel copy of the horizontal edge (n-3,1)-(n-2,1), drawn
    // just above the original so a 2-gon forms between them.
    HalfEdgeId doubled = kNone;
    VertexId du = 0, dv = 0;
    if (far_double) {
        du = id(n - 3, 1);
        dv = id(n - 2, 1);
        doubled = g.add_edge(du, dv);
    }

    for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t i = 0; i < n; ++i) {
            VertexId v = id(i, j);
            std::vector<HalfEdgeId> rot;
            for (int s = 0; s < 4; ++s) {
                if (doubled != kNone && v == dv && s == 2) rot.push_back(doubled ^ 1);
                if (slot[v][s] != kNone) rot.push_back(slot[v][s]);
                if (doubled != kNone && v == du && s == 0) rot.push_back(doubled);
            }
            g.set_rotation(v, std::move(rot));
        }
    for (HalfEdgeId h : border) g.mark_boundary(h);
    g.freeze();
    return g;
}

/// Plain n-cycle (no truncation boundary): two faces on the sphere.
inline EmbeddedGraph make_cycle(std::uint32_t n) {
    EmbeddedGraph g;
    for (std::uint32_t v = 0; v < n; ++v) g.add_vertex();
    std::vector<std::array<HalfEdgeId, 2>> slot(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        HalfEdgeId h = g.add_edge(v, (v + 1) % n);
        slot[v][0] = h;
        slot[(v + 1) % n][1] = h ^ 1;
    }
    for (std::uint32_t v = 0; v < n; ++v) g.set_rotation(v, {slot[v][0], slot[v][1]});
    g.freeze();
    return g;
}

/// Two vertices joined by two parallel edges: both faces are 2-gons.
inline EmbeddedGraph make_two_gon() {
    EmbeddedGraph g;
    g.add_vertex();
    g.add_vertex();
    HalfEdgeId e1 = g.add_edge(0, 1);
    HalfEdgeId e2 = g.add_edge(0, 1);
    g.set_rotation(0, {e1, e2});
    g.set_rotation(1, {static_cast<HalfEdgeId>(e2 ^ 1), static_cast<HalfEdgeId>(e1 ^ 1)});
    g.freeze();
    return g;
}

/// Truncation of the 3-regular tree: root with three branches, binary below,
/// depth levels. No boundary marks (used for resistance only).
inline EmbeddedGraph make_t3(std::uint32_t depth) {
    EmbeddedGraph g;
    VertexId root = g.add_vertex();
    std::vector<std::vector<HalfEdgeId>> rot(1);
    std::vector<VertexId> level{root};
    for (std::uint32_t d = 1; d <= depth; ++d) {
        std::vector<VertexId> next;
        for (VertexId p : level) {
            std::size_t kids = (d == 1) ? 3 : 2;
            for (std::size_t c = 0; c < kids; ++c) {
                VertexId u = g.add_vertex();
                rot.emplace_back();
                HalfEdgeId h = g.add_edge(p, u);
                rot[p].push_back(h);
                rot[u].push_back(h ^ 1);
                next.push_back(u);
            }
        }
        level.swap(next);
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) g.set_rotation(v, std::move(rot[v]));
    g.freeze();
    return g;
}

/// Independent distance recount: dynamic-programming relaxation sweeps
/// (Bellman-Ford style), no queue. Second route against BFS.
inline std::vector<std::uint32_t> relaxation_distances(const EmbeddedGraph& g, VertexId w0) {
    const std::uint32_t inf = 0xffffffffu;
    std::vector<std::uint32_t> d(g.vertex_count(), inf);
    d[w0] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (d[v] == inf) continue;
            for (HalfEdgeId h : g.rotation(v)) {
                VertexId u = g.head(h);
                if (d[v] + 1 < d[u]) {
                    d[u] = d[v] + 1;
                    changed = true;
                }
            }
        }
    }
    return d;
}

/// Hand-evaluated excess table: face half-degree profile -> (num, den).
inline std::vector<std::pair<std::vector<std::uint32_t>, std::pair<int, int>>> excess_table() {
    return {
        {{2, 2, 2, 2}, {0, 1}},    // four squares
        {{1, 2, 2, 2}, {1, 2}},    // 2-gon + three squares
        {{3, 3, 2, 2}, {-1, 3}},   // two hexagons + two squares
        {{1, 2, 2, 3}, {1, 3}},    // 2-gon, two squares, hexagon
        {{1, 2, 3, 3}, {1, 6}},
        {{1, 3, 3, 3}, {0, 1}},
        {{3, 2, 2, 2}, {-1, 6}},
        {{3, 3, 3, 2}, {-1, 2}},
        {{3, 3, 3, 3}, {-2, 3}},
        {{1, 1, 2, 2}, {1, 1}},
    };
}

}  // namespace oracles
