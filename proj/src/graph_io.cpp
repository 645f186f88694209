#include "speiser/graph_io.hpp"

#include <json.hpp>

namespace speiser {

using nlohmann::json;

std::string graph_to_json(const EmbeddedGraph& g, const FaceSet* faces,
                          const Assembly* assembly) {
    json j;
    j["format"] = "speiser-graph/1";

    json verts = json::array();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        json jv;
        jv["rotation"] = std::vector<HalfEdgeId>(g.rotation(v).begin(), g.rotation(v).end());
        jv["parity"] = g.parity(v);
        verts.push_back(std::move(jv));
    }
    j["vertices"] = std::move(verts);

    std::vector<VertexId> origins(g.half_edge_count());
    for (HalfEdgeId h = 0; h < g.half_edge_count(); ++h) origins[h] = g.origin(h);
    j["half_edge_origin"] = std::move(origins);

    std::vector<HalfEdgeId> marks;
    for (HalfEdgeId h = 0; h < g.half_edge_count(); h += 2)
        if (g.boundary_half_edge(h)) marks.push_back(h);
    j["boundary_half_edges"] = std::move(marks);

    if (faces) {
        json jf = json::array();
        for (FaceId f = 0; f < faces->size(); ++f) {
            const FaceRecord& rec = (*faces)[f];
            json one;
            one["boundary"] = rec.boundary;
            one["half_degree"] =
                rec.half_degree == kInfiniteHalfDegree ? -1 : static_cast<int>(rec.half_degree);
            one["touches_truncation_boundary"] = rec.touches_truncation_boundary;
            if (rec.label) one["label"] = rec.label;
            jf.push_back(std::move(one));
        }
        j["faces"] = std::move(jf);
    }

    if (assembly) {
        json meta;
        meta["ray_length"] = assembly->config.ray_length;
        meta["circle_length"] = assembly->config.circle_length;
        meta["schedule_mode"] =
            assembly->config.schedule.mode == SchedulePolicy::Mode::Constant ? "constant"
                                                                             : "banded";
        meta["schedule_s0"] = assembly->config.schedule.s0;
        meta["schedule_band"] = assembly->config.schedule.band;
        meta["w0"] = assembly->w0;
        meta["piece_of_vertex"] = assembly->piece_of_vertex;
        meta["outward_half_edge"] = assembly->outward_half_edge;

        json tree;
        tree["ray"] = assembly->tree.ray;
        json tparent = json::array();
        for (TreeVertexId v = 0; v < assembly->tree.size(); ++v) {
            tparent.push_back(assembly->tree.parent[v] == kNoTreeVertex
                                  ? json(nullptr)
                                  : json(assembly->tree.parent[v]));
        }
        tree["parent"] = std::move(tparent);
        tree["attach_k"] = assembly->tree.attach_k;
        tree["hang_depth"] = assembly->tree.hang_depth;
        meta["tree"] = std::move(tree);

        json pieces = json::array();
        for (const Piece& p : assembly->pieces) {
            json jp;
            jp["kind"] = p.kind == Piece::Kind::Leaf ? "leaf" : "pants";
            jp["tree_vertex"] = p.tree_vertex;
            jp["s"] = p.s;
            jp["two_gon_vertices"] = p.two_gon_vertices;
            jp["hexagon_vertices"] = p.hexagon_vertices;
            pieces.push_back(std::move(jp));
        }
        meta["pieces"] = std::move(pieces);

        json circles = json::array();
        for (const Circle& c : assembly->circles) {
            json jc;
            jc["tree_vertex"] = c.tree_vertex;
            jc["vertices"] = c.vertices;
            jc["child_offset"] = c.child_offset;
            jc["is_truncation_boundary"] = c.is_truncation_boundary;
            circles.push_back(std::move(jc));
        }
        meta["circles"] = std::move(circles);
        j["builder"] = std::move(meta);
    }
    return j.dump(1);
}

LoadedGraph graph_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.value("format", "") != std::string("speiser-graph/1"))
        throw StructureError("graph_from_json: unknown format tag");

    LoadedGraph out;
    EmbeddedGraph& g = out.graph;
    const auto& origins = j.at("half_edge_origin");
    const auto& verts = j.at("vertices");
    for (std::size_t v = 0; v < verts.size(); ++v) g.add_vertex();
    for (std::size_t h = 0; h < origins.size(); h += 2)
        g.add_edge(origins[h].get<VertexId>(), origins[h + 1].get<VertexId>());
    for (std::size_t v = 0; v < verts.size(); ++v)
        g.set_rotation(static_cast<VertexId>(v),
                       verts[v].at("rotation").get<std::vector<HalfEdgeId>>());
    for (const auto& h : j.value("boundary_half_edges", std::vector<HalfEdgeId>{}))
        g.mark_boundary(h);
    g.freeze();

    if (j.contains("builder")) {
        const auto& meta = j["builder"];
        Assembly a;
        a.config.ray_length = meta.at("ray_length").get<std::uint32_t>();
        a.config.circle_length = meta.at("circle_length").get<std::uint32_t>();
        a.config.schedule =
            meta.at("schedule_mode").get<std::string>() == "constant"
                ? SchedulePolicy::constant(meta.at("schedule_s0").get<std::uint32_t>())
                : SchedulePolicy::banded(meta.at("schedule_s0").get<std::uint32_t>(),
                                         meta.at("schedule_band").get<std::uint32_t>());
        a.w0 = meta.at("w0").get<VertexId>();
        a.piece_of_vertex = meta.at("piece_of_vertex").get<std::vector<std::uint32_t>>();
        a.outward_half_edge = meta.at("outward_half_edge").get<std::vector<HalfEdgeId>>();

        const auto& tree = meta.at("tree");
        a.tree.ray = tree.at("ray").get<std::vector<TreeVertexId>>();
        a.tree.ray_length = static_cast<std::uint32_t>(a.tree.ray.size() - 1);
        a.tree.attach_k = tree.at("attach_k").get<std::vector<std::uint32_t>>();
        a.tree.hang_depth = tree.at("hang_depth").get<std::vector<std::uint32_t>>();
        const auto& tparent = tree.at("parent");
        a.tree.parent.resize(tparent.size());
        a.tree.children.assign(tparent.size(), {});
        for (std::size_t v = 0; v < tparent.size(); ++v)
            a.tree.parent[v] =
                tparent[v].is_null() ? kNoTreeVertex : tparent[v].get<TreeVertexId>();
        for (std::size_t v = 0; v < tparent.size(); ++v)
            if (a.tree.parent[v] != kNoTreeVertex)
                a.tree.children[a.tree.parent[v]].push_back(static_cast<TreeVertexId>(v));
        for (std::uint32_t k = 1; k <= a.tree.ray_length; ++k) {
            auto& ch = a.tree.children[a.tree.ray[k]];
            if (ch.size() == 2 && a.tree.hang_depth[ch[1]] == 0) std::swap(ch[0], ch[1]);
        }

        for (const auto& jp : meta.at("pieces")) {
            Piece p;
            p.kind = jp.at("kind").get<std::string>() == "leaf" ? Piece::Kind::Leaf
                                                                : Piece::Kind::Pants;
            p.tree_vertex = jp.at("tree_vertex").get<TreeVertexId>();
            p.s = jp.at("s").get<std::uint32_t>();
            p.two_gon_vertices = jp.at("two_gon_vertices").get<std::vector<VertexId>>();
            p.hexagon_vertices = jp.at("hexagon_vertices").get<std::vector<VertexId>>();
            a.pieces.push_back(std::move(p));
        }
        for (const auto& jc : meta.at("circles")) {
            Circle c;
            c.tree_vertex = jc.at("tree_vertex").get<TreeVertexId>();
            c.vertices = jc.at("vertices").get<std::vector<VertexId>>();
            c.child_offset = jc.at("child_offset").get<std::uint32_t>();
            c.is_truncation_boundary = jc.at("is_truncation_boundary").get<bool>();
            a.circles.push_back(std::move(c));
        }
        a.graph = g;
        out.assembly = std::move(a);
    }
    return out;
}

std::string graph_to_dot(const EmbeddedGraph& g) {
    std::string s = "graph speiser {\n  node [shape=point];\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        s += "  v" + std::to_string(v) + " [parity=" +
             (g.parity(v) == 0 ? "cross" : "circle") + "];\n";
    }
    for (HalfEdgeId h = 0; h < g.half_edge_count(); h += 2) {
        s += "  v" + std::to_string(g.origin(h)) + " -- v" + std::to_string(g.head(h)) + ";\n";
    }
    s += "}\n";
    return s;
}

}  // namespace speiser
