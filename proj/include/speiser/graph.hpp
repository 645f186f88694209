#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace speiser {

using VertexId = std::uint32_t;
using HalfEdgeId = std::uint32_t;
using FaceId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr FaceId kNoFace = std::numeric_limits<FaceId>::max();

/// Half-degree sentinel for faces with unbounded boundary. Never produced by
/// face tracing on a finite graph; accepted by the excess formula.
inline constexpr std::uint32_t kInfiniteHalfDegree = std::numeric_limits<std::uint32_t>::max();

struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite planar multigraph with a rotation system.
///
/// Half-edges come in twin pairs: twin(h) == h ^ 1. The rotation at a vertex
/// is the counterclockwise cyclic order of its outgoing half-edges in the
/// plane. Multi-edges are first-class; the rotation system is the source of
/// truth for the embedding.
class EmbeddedGraph {
public:
    VertexId add_vertex() {
        rotations_.emplace_back();
        parity_.push_back(-1);
        return static_cast<VertexId>(rotations_.size() - 1);
    }

    /// Adds an edge u->w; returns the half-edge at u (its twin is id ^ 1).
    /// Rotations must be assigned afterwards with set_rotation().
    HalfEdgeId add_edge(VertexId u, VertexId w) {
        origin_.push_back(u);
        origin_.push_back(w);
        return static_cast<HalfEdgeId>(origin_.size() - 2);
    }

    void set_rotation(VertexId v, std::vector<HalfEdgeId> rot) {
        rotations_[v] = std::move(rot);
    }

    void mark_boundary(HalfEdgeId h) {
        if (boundary_he_.size() < origin_.size()) boundary_he_.resize(origin_.size(), 0);
        boundary_he_[h] = 1;
        boundary_he_[h ^ 1] = 1;
    }

    /// Validates the structure, fills derived indexes and the parity marks
    /// (2-coloring). Queries below assume freeze() has run.
    void freeze();

    bool frozen() const { return frozen_; }
    std::size_t vertex_count() const { return rotations_.size(); }
    std::size_t half_edge_count() const { return origin_.size(); }
    std::size_t edge_count() const { return origin_.size() / 2; }

    VertexId origin(HalfEdgeId h) const { return origin_[h]; }
    VertexId head(HalfEdgeId h) const { return origin_[h ^ 1]; }
    static HalfEdgeId twin(HalfEdgeId h) { return h ^ 1; }

    std::span<const HalfEdgeId> rotation(VertexId v) const { return rotations_[v]; }
    std::size_t degree(VertexId v) const { return rotations_[v].size(); }

    /// Position of h within its origin's rotation.
    std::uint32_t rotation_index(HalfEdgeId h) const { return rot_pos_[h]; }

    /// Next / previous outgoing half-edge counterclockwise around origin(h).
    HalfEdgeId rot_next(HalfEdgeId h) const {
        const auto& r = rotations_[origin_[h]];
        return r[(rot_pos_[h] + 1) % r.size()];
    }
    HalfEdgeId rot_prev(HalfEdgeId h) const {
        const auto& r = rotations_[origin_[h]];
        return r[(rot_pos_[h] + r.size() - 1) % r.size()];
    }

    /// Parity marks from the 2-coloring: 0 (cross) / 1 (circle).
    /// bipartite() is false if some edge joins equal parities.
    int parity(VertexId v) const { return parity_[v]; }
    bool bipartite() const { return bipartite_; }
    bool connected() const { return connected_; }

    bool boundary_half_edge(HalfEdgeId h) const {
        return !boundary_he_.empty() && boundary_he_[h] != 0;
    }
    bool boundary_vertex(VertexId v) const {
        return !boundary_vx_.empty() && boundary_vx_[v] != 0;
    }
    bool has_boundary() const { return boundary_count_ > 0; }

private:
    std::vector<VertexId> origin_;
    std::vector<std::vector<HalfEdgeId>> rotations_;
    std::vector<std::uint32_t> rot_pos_;
    std::vector<std::int8_t> parity_;
    std::vector<std::uint8_t> boundary_he_;
    std::vector<std::uint8_t> boundary_vx_;
    std::size_t boundary_count_ = 0;
    bool bipartite_ = false;
    bool connected_ = false;
    bool frozen_ = false;
};

/// One face of the embedding: the cyclic half-edge walk with the face on its
/// left, plus the derived half-degree (boundary length = 2 * half_degree).
struct FaceRecord {
    std::vector<HalfEdgeId> boundary;
    std::uint32_t half_degree = 0;
    bool touches_truncation_boundary = false;
    // Optional face label in {1..q}; 0 = unlabeled. Filled by label_faces().
    std::uint32_t label = 0;
};

/// All faces of a frozen graph, and the half-edge -> face index.
class FaceSet {
public:
    explicit FaceSet(const EmbeddedGraph& g);

    std::size_t size() const { return faces_.size(); }
    const FaceRecord& operator[](FaceId f) const { return faces_[f]; }
    FaceRecord& at(FaceId f) { return faces_[f]; }
    FaceId face_of(HalfEdgeId h) const { return face_of_[h]; }

    /// Face at corner i of v: the face between rotation[i] and rotation[i+1].
    FaceId corner_face(const EmbeddedGraph& g, VertexId v, std::size_t i) const {
        auto rot = g.rotation(v);
        return face_of_[rot[(i + 1) % rot.size()]];
    }

    /// A vertex is trusted when none of its incident faces touches the
    /// truncation boundary; statistics are exact only on trusted vertices.
    bool vertex_trusted(VertexId v) const { return vertex_trusted_[v]; }

private:
    std::vector<FaceRecord> faces_;
    std::vector<FaceId> face_of_;
    std::vector<std::uint8_t> vertex_trusted_;
};

struct BallResult {
    // Vertices in breadth-first order together with their distances.
    std::vector<VertexId> order;
    std::vector<std::uint32_t> dist;  // indexed by vertex id; UINT32_MAX if outside
    std::uint32_t radius = 0;
    bool clipped = false;             // ball touches the truncation boundary

    std::size_t size() const { return order.size(); }
};

/// Combinatorial ball of radius r around w0 (graph metric).
BallResult combinatorial_ball(const EmbeddedGraph& g, VertexId w0, std::uint32_t r);

/// Distances from w0 to every vertex (full BFS).
std::vector<std::uint32_t> bfs_distances(const EmbeddedGraph& g, VertexId w0);

}  // namespace speiser
