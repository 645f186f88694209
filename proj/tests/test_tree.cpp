#include <doctest.h>

#include <deque>
#include <map>

#include "speiser/tree.hpp"

using namespace speiser;

namespace {

// Brute-force oracle: grow the 3-regular tree around the ray out to a slack
// horizon and keep exactly the vertices u with d(u, v_n) <= n for every ray
// index n in the window. Returns the count of kept vertices with
// d(u, v_0) <= limit.
struct T3Probe {
    // vertices: 0..H = ray; others appended. adjacency built explicitly.
    std::vector<std::vector<int>> adj;
    int horizon;

    explicit T3Probe(int h) : horizon(h) {
        for (int k = 0; k <= h; ++k) add();
        for (int k = 0; k < h; ++k) link(k, k + 1);
        // third neighbor of each ray vertex k >= 1, then binary growth to
        // depth h (enough slack for membership decisions below h/2).
        std::deque<std::pair<int, int>> frontier;  // (vertex, depth from ray)
        for (int k = 1; k <= h; ++k) {
            int w = add();
            link(k, w);
            frontier.push_back({w, 1});
        }
        while (!frontier.empty()) {
            auto [v, d] = frontier.front();
            frontier.pop_front();
            if (d >= h) continue;
            for (int c = 0; c < 2; ++c) {
                int u = add();
                link(v, u);
                frontier.push_back({u, d + 1});
            }
        }
    }
    int add() {
        adj.emplace_back();
        return static_cast<int>(adj.size()) - 1;
    }
    void link(int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> dist_from(int s) const {
        std::vector<int> d(adj.size(), -1);
        std::deque<int> q{s};
        d[s] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int u : adj[v])
                if (d[u] < 0) {
                    d[u] = d[v] + 1;
                    q.push_back(u);
                }
        }
        return d;
    }
};

}  // namespace

TEST_CASE("membership rule brute force: kept vertices match the construction") {
    // In the 3-regular tree, u belongs iff d(u, v_n) <= n for all n; on a
    // finite window check the rule for every n in the window.
    const int H = 8;
    T3Probe probe(H);
    std::vector<std::vector<int>> dist_to_ray;
    for (int n = 0; n <= H; ++n) dist_to_ray.push_back(probe.dist_from(n));

    auto d0 = probe.dist_from(0);
    // Count members with d(u, v_0) <= 4 (safe window: rule decided by n <= 8).
    int members = 0;
    for (std::size_t u = 0; u < probe.adj.size(); ++u) {
        if (d0[u] > 4) continue;
        bool in = true;
        for (int n = 0; n <= H; ++n)
            if (dist_to_ray[n][u] > n) { in = false; break; }
        if (in) ++members;
    }

    PrunedTree t = build_pruned_tree(H);
    auto dt = tree_distances(t, t.ray[0]);
    int built = 0;
    for (TreeVertexId v = 0; v < t.size(); ++v)
        if (dt[v] <= 4) ++built;
    CHECK(members == built);
}

TEST_CASE("vertex count is 2^(N+1) - 1 and hang sizes are 2^k - 1") {
    for (std::uint32_t N : {1u, 2u, 5u, 8u}) {
        PrunedTree t = build_pruned_tree(N);
        CHECK(t.size() == (std::size_t(1) << (N + 1)) - 1);
        std::map<std::uint32_t, std::size_t> hang_size;
        for (TreeVertexId v = 0; v < t.size(); ++v)
            if (t.hang_depth[v] > 0) ++hang_size[t.attach_k[v]];
        for (std::uint32_t k = 1; k <= N; ++k)
            CHECK(hang_size[k] == (std::size_t(1) << k) - 1);
    }
}

TEST_CASE("attachment depth never exceeds the ray index (membership rule)") {
    PrunedTree t = build_pruned_tree(7);
    for (TreeVertexId v = 0; v < t.size(); ++v) {
        CHECK(t.hang_depth[v] <= t.attach_k[v]);
    }
    // deepest hang vertices sit at depth exactly k
    for (std::uint32_t k = 1; k <= 7; ++k) {
        std::uint32_t deepest = 0;
        for (TreeVertexId v = 0; v < t.size(); ++v)
            if (t.attach_k[v] == k) deepest = std::max(deepest, t.hang_depth[v]);
        CHECK(deepest == k);
    }
}

TEST_CASE("degrees: leaves are v_0 and the deepest hang vertices, others degree 3") {
    PrunedTree t = build_pruned_tree(6);
    std::size_t leaves = 0;
    for (TreeVertexId v = 0; v < t.size(); ++v) {
        std::size_t deg = t.degree(v);
        if (t.is_leaf(v)) {
            ++leaves;
            CHECK(deg == 1);
        } else if (v == t.ray[6]) {
            CHECK(deg == 2);  // missing parent at the truncation top
        } else {
            CHECK(deg == 3);
        }
    }
    CHECK(leaves == (std::size_t(1) << 6));  // v_0 plus hang leaves
    CHECK(t.is_leaf(t.ray[0]));

    // handshake: sum of degrees = 2 * (#vertices - 1)
    std::size_t degsum = 0;
    for (TreeVertexId v = 0; v < t.size(); ++v) degsum += t.degree(v);
    CHECK(degsum == 2 * (t.size() - 1));
}

TEST_CASE("parent: unique step toward the truncation top") {
    PrunedTree t = build_pruned_tree(5);
    CHECK(tree_parent(t, t.ray[0]) == t.ray[1]);
    for (std::uint32_t k = 0; k < 5; ++k) CHECK(tree_parent(t, t.ray[k]) == t.ray[k + 1]);
    CHECK_THROWS_AS(tree_parent(t, t.ray[5]), std::domain_error);

    // hang children: parent is one step closer to v_N
    auto dN = tree_distances(t, t.ray[5]);
    for (TreeVertexId v = 0; v < t.size(); ++v) {
        if (v == t.ray[5]) continue;
        TreeVertexId p = tree_parent(t, v);
        CHECK(dN[p] + 1 == dN[v]);
    }
}

TEST_CASE("unique-ray proxy: exactly one strictly closer neighbor to v_N") {
    PrunedTree t = build_pruned_tree(6);
    auto dN = tree_distances(t, t.ray[6]);
    for (TreeVertexId v = 0; v < t.size(); ++v) {
        if (v == t.ray[6]) continue;
        std::size_t closer = 0;
        auto consider = [&](TreeVertexId u) {
            if (u != kNoTreeVertex && dN[u] + 1 == dN[v]) ++closer;
        };
        consider(t.parent[v]);
        for (TreeVertexId c : t.children[v])
            if (dN[c] + 1 == dN[v]) ++closer;
        CHECK(closer == 1);
    }
}

TEST_CASE("exponential ball growth around v_0") {
    PrunedTree t = build_pruned_tree(10);
    auto d0 = tree_distances(t, t.ray[0]);
    for (std::uint32_t r = 2; r <= 10; ++r) {
        std::size_t count = 0;
        for (TreeVertexId v = 0; v < t.size(); ++v)
            if (d0[v] <= r) ++count;
        double bound = 0.25 * std::pow(2.0, r / 2.0);
        CHECK(static_cast<double>(count) >= bound);
    }
}

TEST_CASE("tree json dump carries ray length and parents") {
    PrunedTree t = build_pruned_tree(2);
    std::string j = tree_to_json(t);
    CHECK(j.find("\"ray_length\": 2") != std::string::npos);
    CHECK(j.find("\"parent\": null") != std::string::npos);
}
