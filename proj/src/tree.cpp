#include "speiser/tree.hpp"

#include <deque>

namespace speiser {

PrunedTree build_pruned_tree(std::uint32_t ray_length) {
    if (ray_length < 1) throw std::domain_error("build_pruned_tree: ray length must be >= 1");
    PrunedTree t;
    t.ray_length = ray_length;

    auto add_vertex = [&t](std::uint32_t k, std::uint32_t m) {
        t.parent.push_back(kNoTreeVertex);
        t.children.emplace_back();
        t.attach_k.push_back(k);
        t.hang_depth.push_back(m);
        return static_cast<TreeVertexId>(t.parent.size() - 1);
    };
    auto link = [&t](TreeVertexId child, TreeVertexId par) {
        t.parent[child] = par;
        t.children[par].push_back(child);
    };

    // Ray first: ids 0..N.
    for (std::uint32_t k = 0; k <= ray_length; ++k) t.ray.push_back(add_vertex(k, 0));
    for (std::uint32_t k = 0; k < ray_length; ++k) link(t.ray[k], t.ray[k + 1]);

    // Hang at v_k: one vertex w_k under v_k, then a complete binary tree of
    // depth k-1 under w_k (2^k - 1 vertices total, deepest at depth k).
    for (std::uint32_t k = 1; k <= ray_length; ++k) {
        TreeVertexId w = add_vertex(k, 1);
        link(w, t.ray[k]);
        std::deque<TreeVertexId> frontier{w};
        for (std::uint32_t m = 2; m <= k; ++m) {
            std::deque<TreeVertexId> next;
            for (TreeVertexId p : frontier) {
                for (int c = 0; c < 2; ++c) {
                    TreeVertexId u = add_vertex(k, m);
                    link(u, p);
                    next.push_back(u);
                }
            }
            frontier.swap(next);
        }
    }

    // Put the downward ray child first so that pants inner circles get a
    // stable (ray, hang) order.
    for (std::uint32_t k = 1; k <= ray_length; ++k) {
        auto& ch = t.children[t.ray[k]];
        if (ch.size() == 2 && t.is_ray(ch[1])) std::swap(ch[0], ch[1]);
    }
    return t;
}

TreeVertexId tree_parent(const PrunedTree& t, TreeVertexId v) {
    if (t.parent[v] == kNoTreeVertex)
        throw std::domain_error("tree_parent: truncation top has no parent");
    return t.parent[v];
}

std::vector<std::uint32_t> tree_distances(const PrunedTree& t, TreeVertexId u) {
    std::vector<std::uint32_t> dist(t.size(), static_cast<std::uint32_t>(-1));
    std::deque<TreeVertexId> queue{u};
    dist[u] = 0;
    while (!queue.empty()) {
        TreeVertexId v = queue.front();
        queue.pop_front();
        auto visit = [&](TreeVertexId w) {
            if (w != kNoTreeVertex && dist[w] == static_cast<std::uint32_t>(-1)) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        };
        visit(t.parent[v]);
        for (TreeVertexId c : t.children[v]) visit(c);
    }
    return dist;
}

std::string tree_to_json(const PrunedTree& t) {
    std::string s = "{\n  \"format\": \"speiser-tree/1\",\n  \"ray_length\": " +
                    std::to_string(t.ray_length) + ",\n  \"vertices\": [\n";
    for (TreeVertexId v = 0; v < t.size(); ++v) {
        s += "    {\"parent\": " +
             (t.parent[v] == kNoTreeVertex ? std::string("null") : std::to_string(t.parent[v])) +
             ", \"attach\": " + std::to_string(t.attach_k[v]) +
             ", \"depth\": " + std::to_string(t.hang_depth[v]) + "}";
        if (v + 1 < t.size()) s += ",";
        s += "\n";
    }
    s += "  ]\n}\n";
    return s;
}

}  // namespace speiser
