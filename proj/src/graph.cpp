#include "speiser/graph.hpp"

#include <deque>
#include <queue>

namespace speiser {

void EmbeddedGraph::freeze() {
    const std::size_t nh = origin_.size();
    const std::size_t nv = rotations_.size();
    if (nh % 2 != 0) throw StructureError("freeze: odd number of half-edges");

    for (HalfEdgeId h = 0; h < nh; ++h) {
        if (origin_[h] >= nv)
            throw StructureError("freeze: half-edge " + std::to_string(h) + " has bad origin");
    }

    // Every half-edge must appear exactly once, in its origin's rotation.
    rot_pos_.assign(nh, std::numeric_limits<std::uint32_t>::max());
    for (VertexId v = 0; v < nv; ++v) {
        const auto& rot = rotations_[v];
        for (std::size_t i = 0; i < rot.size(); ++i) {
            HalfEdgeId h = rot[i];
            if (h >= nh)
                throw StructureError("freeze: rotation of vertex " + std::to_string(v) +
                                     " names missing half-edge " + std::to_string(h));
            if (origin_[h] != v)
                throw StructureError("freeze: half-edge " + std::to_string(h) +
                                     " listed at vertex " + std::to_string(v) +
                                     " but originates elsewhere");
            if (rot_pos_[h] != std::numeric_limits<std::uint32_t>::max())
                throw StructureError("freeze: half-edge " + std::to_string(h) +
                                     " appears in two rotations");
            rot_pos_[h] = static_cast<std::uint32_t>(i);
        }
    }
    for (HalfEdgeId h = 0; h < nh; ++h) {
        if (rot_pos_[h] == std::numeric_limits<std::uint32_t>::max())
            throw StructureError("freeze: half-edge " + std::to_string(h) +
                                 " missing from every rotation");
        if (origin_[h] == origin_[h ^ 1])
            throw StructureError("freeze: half-edge " + std::to_string(h) +
                                 " is a self-loop");
    }

    // Boundary vertices: endpoints of marked half-edges.
    boundary_he_.resize(nh, 0);
    boundary_vx_.assign(nv, 0);
    boundary_count_ = 0;
    for (HalfEdgeId h = 0; h < nh; ++h) {
        if (boundary_he_[h]) {
            boundary_vx_[origin_[h]] = 1;
            ++boundary_count_;
        }
    }

    // 2-coloring. Records bipartiteness; parity stays usable either way
    // (violations are reported by the validity check, not here).
    parity_.assign(nv, -1);
    bipartite_ = true;
    connected_ = true;
    std::size_t seen = 0;
    std::deque<VertexId> queue;
    for (VertexId start = 0; start < nv; ++start) {
        if (parity_[start] != -1) continue;
        if (seen > 0) connected_ = false;
        parity_[start] = 0;
        queue.push_back(start);
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            ++seen;
            for (HalfEdgeId h : rotations_[v]) {
                VertexId w = origin_[h ^ 1];
                if (parity_[w] == -1) {
                    parity_[w] = 1 - parity_[v];
                    queue.push_back(w);
                } else if (parity_[w] == parity_[v]) {
                    bipartite_ = false;
                }
            }
        }
    }
    if (nv == 0) connected_ = false;
    frozen_ = true;
}

FaceSet::FaceSet(const EmbeddedGraph& g) {
    if (!g.frozen()) throw StructureError("trace_faces: graph not frozen");
    const std::size_t nh = g.half_edge_count();
    face_of_.assign(nh, kNoFace);

    // Faces lie on the left of their half-edges; with counterclockwise
    // rotations the successor of h along its face is rot_prev(twin(h)).
    for (HalfEdgeId h0 = 0; h0 < nh; ++h0) {
        if (face_of_[h0] != kNoFace) continue;
        FaceRecord face;
        FaceId id = static_cast<FaceId>(faces_.size());
        HalfEdgeId h = h0;
        do {
            face_of_[h] = id;
            face.boundary.push_back(h);
            if (g.boundary_half_edge(h) || g.boundary_vertex(g.origin(h)))
                face.touches_truncation_boundary = true;
            h = g.rot_prev(EmbeddedGraph::twin(h));
        } while (h != h0);
        face.half_degree = static_cast<std::uint32_t>(face.boundary.size() / 2);
        faces_.push_back(std::move(face));
    }

    vertex_trusted_.assign(g.vertex_count(), 1);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) == 0) {
            vertex_trusted_[v] = 0;
            continue;
        }
        for (HalfEdgeId h : g.rotation(v)) {
            if (faces_[face_of_[h]].touches_truncation_boundary) {
                vertex_trusted_[v] = 0;
                break;
            }
        }
    }
}

BallResult combinatorial_ball(const EmbeddedGraph& g, VertexId w0, std::uint32_t r) {
    if (w0 >= g.vertex_count()) throw StructureError("combinatorial_ball: bad basepoint");
    BallResult res;
    res.radius = r;
    res.dist.assign(g.vertex_count(), std::numeric_limits<std::uint32_t>::max());
    res.dist[w0] = 0;
    res.order.push_back(w0);
    std::size_t qi = 0;
    while (qi < res.order.size()) {
        VertexId v = res.order[qi++];
        if (g.boundary_vertex(v)) res.clipped = true;
        std::uint32_t d = res.dist[v];
        if (d == r) continue;
        for (HalfEdgeId h : g.rotation(v)) {
            VertexId w = g.head(h);
            if (res.dist[w] == std::numeric_limits<std::uint32_t>::max()) {
                res.dist[w] = d + 1;
                res.order.push_back(w);
            }
        }
    }
    return res;
}

std::vector<std::uint32_t> bfs_distances(const EmbeddedGraph& g, VertexId w0) {
    std::vector<std::uint32_t> dist(g.vertex_count(), std::numeric_limits<std::uint32_t>::max());
    std::vector<VertexId> order;
    order.reserve(g.vertex_count());
    dist[w0] = 0;
    order.push_back(w0);
    std::size_t qi = 0;
    while (qi < order.size()) {
        VertexId v = order[qi++];
        for (HalfEdgeId h : g.rotation(v)) {
            VertexId w = g.head(h);
            if (dist[w] == std::numeric_limits<std::uint32_t>::max()) {
                dist[w] = dist[v] + 1;
                order.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace speiser
