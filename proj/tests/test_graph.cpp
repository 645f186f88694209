#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "speiser/graph.hpp"

using namespace speiser;

namespace {

std::map<std::uint32_t, std::size_t> face_size_census(const FaceSet& faces) {
    std::map<std::uint32_t, std::size_t> census;
    for (FaceId f = 0; f < faces.size(); ++f) ++census[(std::uint32_t)faces[f].boundary.size()];
    return census;
}

}  // namespace

TEST_CASE("two parallel edges trace as two 2-gons") {
    EmbeddedGraph g = oracles::make_two_gon();
    FaceSet faces(g);
    REQUIRE(faces.size() == 2);
    CHECK(faces[0].boundary.size() == 2);
    CHECK(faces[1].boundary.size() == 2);
    CHECK(faces[0].half_degree == 1);
    CHECK(g.bipartite());
    // Euler on the sphere
    CHECK(g.vertex_count() - g.edge_count() + faces.size() == 2);
}

TEST_CASE("square 4-cycle: two faces of length 4") {
    EmbeddedGraph g = oracles::make_cycle(4);
    FaceSet faces(g);
    REQUIRE(faces.size() == 2);
    CHECK(faces[0].boundary.size() == 4);
    CHECK(faces[1].boundary.size() == 4);
    CHECK(faces[0].half_degree == 2);
    CHECK(g.vertex_count() - g.edge_count() + faces.size() == 2);  // 4 - 4 + 2
}

TEST_CASE("6x6 grid: interior faces are all squares, one boundary face") {
    EmbeddedGraph g = oracles::make_grid(6);
    FaceSet faces(g);
    // (n-1)^2 quads plus the outer face
    REQUIRE(faces.size() == 25 + 1);
    std::size_t quads = 0, boundary_faces = 0;
    for (FaceId f = 0; f < faces.size(); ++f) {
        if (faces[f].boundary.size() == 4) {
            ++quads;
            CHECK(faces[f].half_degree == 2);
        }
        if (faces[f].touches_truncation_boundary) ++boundary_faces;
    }
    CHECK(quads == 25);
    // Every face containing a border vertex is contaminated: the outer face
    // plus the ring of border-adjacent quads.
    CHECK(boundary_faces > 1);
    CHECK(g.vertex_count() - g.edge_count() + faces.size() == 2);
}

TEST_CASE("face tracing partitions the half-edges") {
    for (auto* g : {new EmbeddedGraph(oracles::make_grid(7)),
                    new EmbeddedGraph(oracles::make_two_gon()),
                    new EmbeddedGraph(oracles::make_grid(9, true))}) {
        FaceSet faces(*g);
        std::size_t total = 0;
        for (FaceId f = 0; f < faces.size(); ++f) total += faces[f].boundary.size();
        CHECK(total == g->half_edge_count());
        std::vector<int> seen(g->half_edge_count(), 0);
        for (FaceId f = 0; f < faces.size(); ++f)
            for (HalfEdgeId h : faces[f].boundary) ++seen[h];
        for (auto c : seen) REQUIRE(c == 1);
        delete g;
    }
}

TEST_CASE("bipartite parity per half-edge") {
    EmbeddedGraph g = oracles::make_grid(5);
    for (HalfEdgeId h = 0; h < g.half_edge_count(); ++h)
        CHECK(g.parity(g.origin(h)) != g.parity(g.head(h)));
}

TEST_CASE("combinatorial ball basics") {
    EmbeddedGraph sq = oracles::make_cycle(4);
    auto b0 = combinatorial_ball(sq, 1, 0);
    CHECK(b0.size() == 1);
    CHECK(b0.dist[1] == 0);
    auto b1 = combinatorial_ball(sq, 2, 1);
    CHECK(b1.size() == 3);
    CHECK_FALSE(b1.clipped);

    EmbeddedGraph grid = oracles::make_grid(9);
    auto far = combinatorial_ball(grid, 4 * 9 + 4, 2);
    CHECK_FALSE(far.clipped);
    auto touching = combinatorial_ball(grid, 4 * 9 + 4, 4);
    CHECK(touching.clipped);
}

TEST_CASE("ball distances agree with an independent relaxation recount") {
    EmbeddedGraph g = oracles::make_grid(10, true);
    auto bfs = bfs_distances(g, 33);
    auto relax = oracles::relaxation_distances(g, 33);
    REQUIRE(bfs.size() == relax.size());
    for (std::size_t v = 0; v < bfs.size(); ++v) CHECK(bfs[v] == relax[v]);
}

TEST_CASE("ball distances satisfy the triangle inequality on sampled triples") {
    EmbeddedGraph g = oracles::make_grid(8);
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        VertexId a = rng() % g.vertex_count();
        VertexId b = rng() % g.vertex_count();
        VertexId c = rng() % g.vertex_count();
        auto da = bfs_distances(g, a);
        auto db = bfs_distances(g, b);
        CHECK(da[c] <= da[b] + db[c]);
    }
}

TEST_CASE("freeze rejects malformed rotations") {
    EmbeddedGraph g;
    g.add_vertex();
    g.add_vertex();
    HalfEdgeId h = g.add_edge(0, 1);
    g.set_rotation(0, {h});
    // twin never listed anywhere
    CHECK_THROWS_AS(g.freeze(), StructureError);

    EmbeddedGraph g2;
    g2.add_vertex();
    g2.add_vertex();
    HalfEdgeId h2 = g2.add_edge(0, 1);
    g2.set_rotation(0, {h2});
    g2.set_rotation(1, {h2});  // listed at the wrong vertex
    CHECK_THROWS_WITH_AS(g2.freeze(), doctest::Contains("originates elsewhere"), StructureError);
}

TEST_CASE("face census helper sees the doubled far edge") {
    EmbeddedGraph g = oracles::make_grid(9, true);
    FaceSet faces(g);
    auto census = face_size_census(faces);
    CHECK(census[2] == 1);  // exactly one 2-gon
    CHECK(g.vertex_count() - g.edge_count() + faces.size() == 2);
}
