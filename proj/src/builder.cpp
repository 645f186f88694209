#include "speiser/builder.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "speiser/excess.hpp"

namespace speiser {

namespace {

// Rotation slots at a circle/ring vertex, counterclockwise:
// [toward next position, into the circle, toward previous position, away].
enum Slot : int { kNext = 0, kInward = 1, kPrev = 2, kOutward = 3 };

struct MeshBuilder {
    EmbeddedGraph g;
    std::vector<std::array<HalfEdgeId, 4>> slots;
    std::vector<std::uint32_t> owner;  // piece index per vertex
    std::uint32_t current_piece = 0;

    VertexId new_vertex() {
        VertexId v = g.add_vertex();
        slots.push_back({kNoHalfEdge, kNoHalfEdge, kNoHalfEdge, kNoHalfEdge});
        owner.push_back(current_piece);
        return v;
    }

    void connect(VertexId u, Slot su, VertexId w, Slot sw) {
        HalfEdgeId h = g.add_edge(u, w);
        if (slots[u][su] != kNoHalfEdge || slots[w][sw] != kNoHalfEdge)
            throw AssemblyError("mesh: rotation slot used twice at vertex " +
                                std::to_string(slots[u][su] != kNoHalfEdge ? u : w));
        slots[u][su] = h;
        slots[w][sw] = h ^ 1;
    }

    std::vector<VertexId> add_ring(std::uint32_t L) {
        std::vector<VertexId> ring(L);
        for (auto& v : ring) v = new_vertex();
        for (std::uint32_t p = 0; p < L; ++p)
            connect(ring[p], kNext, ring[(p + 1) % L], kPrev);
        return ring;
    }

    void finish() {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            std::vector<HalfEdgeId> rot;
            for (int s = 0; s < 4; ++s)
                if (slots[v][s] != kNoHalfEdge) rot.push_back(slots[v][s]);
            g.set_rotation(v, std::move(rot));
        }
        g.freeze();
    }
};

using At = std::function<VertexId(std::uint32_t)>;

void check_circle_length(std::uint32_t L) {
    if (!(L == 4 || (L >= 8 && L % 4 == 0)))
        throw AssemblyError("circle length " + std::to_string(L) +
                            " unsupported (use 4 or a multiple of 4 >= 8)");
}

/// Concentric rings below the outer circle plus the innermost cap that closes
/// the disk with 2-gons. Every positive-excess vertex of the finished piece
/// sits on the innermost ring, at ring distance s from the outer circle.
void build_leaf_interior(MeshBuilder& m, const At& outer, std::uint32_t s, std::uint32_t L,
                         std::vector<VertexId>* two_gons) {
    check_circle_length(L);
    if (s < 1) throw AssemblyError("leaf: s must be >= 1");

    std::vector<VertexId> above(L);
    for (std::uint32_t p = 0; p < L; ++p) above[p] = outer(p);
    std::vector<VertexId> ring;
    for (std::uint32_t i = 1; i <= s; ++i) {
        ring = m.add_ring(L);
        for (std::uint32_t p = 0; p < L; ++p)
            m.connect(above[p], kInward, ring[p], kOutward);
        above = ring;
    }

    auto double_edge = [&](std::uint32_t p) {  // parallel copy of ring edge (p, p+1)
        m.connect(ring[p], kInward, ring[(p + 1) % L], kInward);
        two_gons->push_back(ring[p]);
        two_gons->push_back(ring[(p + 1) % L]);
    };
    auto chord = [&](std::uint32_t p, std::uint32_t q) {
        m.connect(ring[p % L], kInward, ring[q % L], kInward);
    };

    if (L == 4) {
        double_edge(0);
        double_edge(2);
    } else {
        double_edge(1);
        double_edge(L / 2 + 1);
        chord(0, 3);
        chord(L / 2, L / 2 + 3);
        for (std::uint32_t k = 4; k < L / 2; ++k) chord(k, L + 3 - k);
    }
}

/// Triply connected piece: outer circle O, inner circles A and B, 3L/2 spokes,
/// faces all quadrilaterals except the two hexagons at the junctions.
void build_pants_interior(MeshBuilder& m, const At& O, const At& A, const At& B,
                          std::uint32_t L, std::vector<VertexId>* hexagons) {
    check_circle_length(L);
    for (std::uint32_t i = 1; i <= L / 2; ++i) m.connect(O(i), kInward, A(i), kOutward);
    for (std::uint32_t i = L / 2 + 1; i <= L; ++i)
        m.connect(O(i % L), kInward, B(i - 1), kOutward);
    for (std::uint32_t i = 1; i <= L / 2; ++i)
        m.connect(A((L / 2 + i) % L), kOutward, B((L / 2 - i) % L), kOutward);

    for (std::uint32_t p : {0u, 1u}) {
        hexagons->push_back(O(p));
        hexagons->push_back(A(p));
    }
    hexagons->push_back(B(L - 1));
    hexagons->push_back(B(0));
    for (std::uint32_t p : {L / 2, L / 2 + 1}) {
        hexagons->push_back(O(p));
        hexagons->push_back(A(p));
    }
    hexagons->push_back(B(L / 2 - 1));
    hexagons->push_back(B(L / 2));
}

// Frame shift between a child piece's coordinates and the circle storage
// (parent frame): parent position = child position + offset. Chosen so that
// the leaf cap's 2-gon columns land exactly on the parent pants' hexagon
// corners, which makes the nearest negative vertex sit straight below each
// positive one.
std::uint32_t child_offset(bool child_is_leaf, bool role_a, std::uint32_t L) {
    if (!child_is_leaf) return 0;
    return role_a ? L - 1 : L - 2;
}

}  // namespace

std::uint32_t leaf_two_gon_count(std::uint32_t L) {
    check_circle_length(L);
    return 2;  // every supported cap doubles exactly two ring edges
}

Assembly assemble(const PrunedTree& tree, const BuilderConfig& config) {
    const std::uint32_t L = config.circle_length;
    check_circle_length(L);
    if (config.schedule.s0 < 1) throw AssemblyError("schedule: s must be >= 1");

    Assembly a;
    a.tree = tree;
    a.config = config;
    a.circles.resize(tree.size());

    MeshBuilder m;

    // Pieces in breadth-first order from the truncation top.
    std::deque<TreeVertexId> order{tree.ray[tree.ray_length]};
    std::vector<TreeVertexId> bfs;
    while (!order.empty()) {
        TreeVertexId v = order.front();
        order.pop_front();
        bfs.push_back(v);
        for (TreeVertexId c : tree.children[v]) order.push_back(c);
    }

    // Root circle: the unpasted outer boundary of the piece at v_N.
    m.current_piece = 0;
    a.circles[bfs.front()].tree_vertex = bfs.front();
    a.circles[bfs.front()].vertices = m.add_ring(L);
    a.circles[bfs.front()].is_truncation_boundary = true;

    for (std::size_t pi = 0; pi < bfs.size(); ++pi) {
        TreeVertexId v = bfs[pi];
        m.current_piece = static_cast<std::uint32_t>(pi);

        Piece piece;
        piece.tree_vertex = v;
        const Circle& outer_circle = a.circles[v];
        const std::uint32_t off = outer_circle.child_offset;
        At outer = [&outer_circle, off, L](std::uint32_t p) {
            return outer_circle.vertices[(p + off) % L];
        };

        if (tree.is_leaf(v)) {
            piece.kind = Piece::Kind::Leaf;
            piece.s = config.schedule.s_of(tree, v);
            build_leaf_interior(m, outer, piece.s, L, &piece.two_gon_vertices);
        } else {
            piece.kind = Piece::Kind::Pants;
            if (tree.children[v].size() != 2)
                throw AssemblyError("pants piece at tree vertex " + std::to_string(v) +
                                    " needs exactly two children");
            TreeVertexId ca = tree.children[v][0];
            TreeVertexId cb = tree.children[v][1];
            for (TreeVertexId c : {ca, cb}) {
                a.circles[c].tree_vertex = c;
                a.circles[c].vertices = m.add_ring(L);
            }
            a.circles[ca].child_offset = child_offset(tree.is_leaf(ca), true, L);
            a.circles[cb].child_offset = child_offset(tree.is_leaf(cb), false, L);
            At A = [&a, ca](std::uint32_t p) { return a.circles[ca].vertices[p % a.circles[ca].vertices.size()]; };
            At B = [&a, cb](std::uint32_t p) { return a.circles[cb].vertices[p % a.circles[cb].vertices.size()]; };
            build_pants_interior(m, outer, A, B, L, &piece.hexagon_vertices);
        }
        a.pieces.push_back(std::move(piece));
    }

    // The truncation boundary is the root circle.
    for (VertexId v : a.circles[bfs.front()].vertices)
        m.g.mark_boundary(m.slots[v][kNext]);

    a.outward_half_edge.assign(m.g.vertex_count(), kNoHalfEdge);
    for (VertexId v = 0; v < m.g.vertex_count(); ++v)
        a.outward_half_edge[v] = m.slots[v][kOutward];

    m.finish();
    a.graph = std::move(m.g);
    a.piece_of_vertex = std::move(m.owner);

    // Pasted circles must alternate parity; a violation would mean the two
    // sides of some circle disagree about the bipartition.
    for (TreeVertexId v = 0; v < tree.size(); ++v) {
        const auto& ring = a.circles[v].vertices;
        for (std::uint32_t p = 0; p < L; ++p) {
            if (a.graph.parity(ring[p]) == a.graph.parity(ring[(p + 1) % L]))
                throw AssemblyError("parity mismatch on the pasting circle of tree edge (" +
                                    std::to_string(v) + " -> parent)");
        }
    }

    a.w0 = a.circles[tree.ray[0]].vertices[0];
    return a;
}

namespace {

GadgetPiece standalone(std::uint32_t L, bool leaf, std::uint32_t s) {
    check_circle_length(L);
    MeshBuilder m;
    GadgetPiece piece;
    piece.kind = leaf ? Piece::Kind::Leaf : Piece::Kind::Pants;
    piece.s = s;
    piece.outer = m.add_ring(L);
    At outer = [&piece](std::uint32_t p) { return piece.outer[p % piece.outer.size()]; };
    if (leaf) {
        build_leaf_interior(m, outer, s, L, &piece.two_gon_vertices);
    } else {
        piece.inner.push_back(m.add_ring(L));
        piece.inner.push_back(m.add_ring(L));
        At A = [&piece](std::uint32_t p) { return piece.inner[0][p % piece.inner[0].size()]; };
        At B = [&piece](std::uint32_t p) { return piece.inner[1][p % piece.inner[1].size()]; };
        build_pants_interior(m, outer, A, B, L, &piece.hexagon_vertices);
        // Standalone inner circles are unpasted, hence boundary too.
        for (const auto& ring : piece.inner)
            for (VertexId v : ring) m.g.mark_boundary(m.slots[v][kNext]);
    }
    for (VertexId v : piece.outer) m.g.mark_boundary(m.slots[v][kNext]);
    m.finish();
    piece.graph = std::move(m.g);
    return piece;
}

}  // namespace

GadgetPiece leaf_gadget(std::uint32_t s, std::uint32_t L) {
    if (s < 1) throw AssemblyError("leaf_gadget: s must be >= 1");
    return standalone(L, true, s);
}

GadgetPiece pants_gadget(std::uint32_t L) { return standalone(L, false, 0); }

VertexId sigma_of(const Assembly& a, const FaceSet& faces, VertexId w) {
    Rational ew = excess(a.graph, faces, w);
    if (ew.sign() <= 0) throw AssemblyError("sigma: vertex has no positive excess");

    // Breadth-first search until the first level containing a negative
    // vertex; smallest id wins on ties.
    std::vector<std::uint32_t> dist(a.graph.vertex_count(),
                                    std::numeric_limits<std::uint32_t>::max());
    std::deque<VertexId> queue{w};
    dist[w] = 0;
    VertexId best = kNoVertex;
    std::uint32_t best_d = std::numeric_limits<std::uint32_t>::max();
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        if (dist[v] > best_d) break;
        if (v != w && faces.vertex_trusted(v) && excess(a.graph, faces, v).sign() < 0) {
            if (dist[v] < best_d || (dist[v] == best_d && v < best)) {
                best = v;
                best_d = dist[v];
            }
            continue;
        }
        for (HalfEdgeId h : a.graph.rotation(v)) {
            VertexId u = a.graph.head(h);
            if (dist[u] == std::numeric_limits<std::uint32_t>::max()) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    if (best == kNoVertex)
        throw AssemblyError("sigma: no negative-excess vertex in the trusted region "
                            "(truncation too small)");
    return best;
}

SigmaResult sigma_map(const Assembly& a, const FaceSet& faces) {
    auto field = excess_field(a.graph, faces);
    SigmaResult res;
    res.injective = true;
    res.distances_match_schedule = true;

    std::set<VertexId> images;
    for (VertexId w = 0; w < a.graph.vertex_count(); ++w) {
        if (!field[w] || field[w]->sign() <= 0) continue;
        VertexId target = sigma_of(a, faces, w);
        // Recompute the distance (sigma_of already knows it, but keeping the
        // interface small is worth one extra search on few vertices).
        std::uint32_t d = 0;
        {
            std::vector<std::uint32_t> dd(a.graph.vertex_count(),
                                          std::numeric_limits<std::uint32_t>::max());
            std::deque<VertexId> q{w};
            dd[w] = 0;
            while (!q.empty()) {
                VertexId v = q.front();
                q.pop_front();
                if (v == target) { d = dd[v]; break; }
                for (HalfEdgeId h : a.graph.rotation(v)) {
                    VertexId u = a.graph.head(h);
                    if (dd[u] == std::numeric_limits<std::uint32_t>::max()) {
                        dd[u] = dd[v] + 1;
                        q.push_back(u);
                    }
                }
            }
        }
        const Piece& owner = a.pieces[a.piece_of_vertex[w]];
        if (owner.kind != Piece::Kind::Leaf || d != owner.s)
            res.distances_match_schedule = false;
        if (!images.insert(target).second) res.injective = false;
        res.pairs.push_back({w, target, d});
    }
    return res;
}

}  // namespace speiser
