#include "speiser/excess.hpp"

#include <algorithm>
#include <deque>

namespace speiser {

Rational excess_from_profile(std::span<const std::uint32_t> half_degrees) {
    Rational e(2);
    for (std::uint32_t k : half_degrees) {
        if (k == kInfiniteHalfDegree) {
            e -= Rational(1);
        } else {
            if (k == 0) throw std::domain_error("excess: face with half-degree 0");
            e -= Rational(static_cast<std::int64_t>(k) - 1, static_cast<std::int64_t>(k));
        }
    }
    return e;
}

Rational excess(const EmbeddedGraph& g, const FaceSet& faces, VertexId v) {
    std::vector<std::uint32_t> ks;
    ks.reserve(g.degree(v));
    for (std::size_t i = 0; i < g.degree(v); ++i) {
        const FaceRecord& f = faces[faces.corner_face(g, v, i)];
        if (f.touches_truncation_boundary)
            throw UntrustedVertexError("excess: vertex " + std::to_string(v) +
                                       " touches a truncation-contaminated face");
        ks.push_back(f.half_degree);
    }
    return excess_from_profile(ks);
}

std::vector<std::optional<Rational>> excess_field(const EmbeddedGraph& g, const FaceSet& faces) {
    std::vector<std::optional<Rational>> out(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!faces.vertex_trusted(v)) continue;
        out[v] = excess(g, faces, v);
    }
    return out;
}

std::string ValidityReport::summary() const {
    if (violations.empty()) return "valid";
    std::string s = std::to_string(violations.size()) + " violation(s): ";
    for (std::size_t i = 0; i < violations.size() && i < 5; ++i) {
        if (i) s += "; ";
        s += violations[i].detail;
    }
    if (violations.size() > 5) s += "; ...";
    return s;
}

ValidityReport validate_speiser(const EmbeddedGraph& g, std::uint32_t q) {
    ValidityReport rep;
    if (!g.connected())
        rep.violations.push_back({ValidityViolation::NotConnected, "graph is not connected"});
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.boundary_vertex(v)) continue;
        if (g.degree(v) != q)
            rep.violations.push_back(
                {ValidityViolation::BadDegree,
                 "interior vertex " + std::to_string(v) + " has degree " +
                     std::to_string(g.degree(v)) + " (expected " + std::to_string(q) + ")"});
    }
    for (HalfEdgeId h = 0; h < g.half_edge_count(); h += 2) {
        if (g.parity(g.origin(h)) == g.parity(g.head(h)))
            rep.violations.push_back(
                {ValidityViolation::OddCycleEdge,
                 "edge " + std::to_string(h / 2) + " joins equal parities (vertices " +
                     std::to_string(g.origin(h)) + ", " + std::to_string(g.head(h)) + ")"});
    }
    return rep;
}

LabelingResult label_faces(const EmbeddedGraph& g, FaceSet& faces, std::uint32_t q,
                           const std::vector<std::pair<FaceId, std::uint32_t>>& forced) {
    LabelingResult res;
    const std::size_t nf = faces.size();
    std::vector<std::int64_t> label(nf, -1);

    // Propagate across corners of trusted degree-q vertices: counterclockwise
    // the label steps by +1 at parity-0 vertices and -1 at parity-1 ones.
    std::vector<FaceId> interior;
    for (FaceId f = 0; f < nf; ++f)
        if (!faces[f].touches_truncation_boundary) interior.push_back(f);
    if (interior.empty()) return res;

    std::deque<FaceId> queue;
    for (const auto& [f, l] : forced) {
        if (l < 1 || l > q) throw std::domain_error("label_faces: forced label out of range");
        if (label[f] >= 0 && label[f] != l - 1) {
            res.consistent = false;
            res.witness_vertex = kNoVertex;
            res.label_a = static_cast<std::uint32_t>(label[f]) + 1;
            res.label_b = l;
            return res;
        }
        label[f] = l - 1;
        queue.push_back(f);
    }
    if (queue.empty()) {
        label[interior.front()] = 0;
        queue.push_back(interior.front());
    }
    std::vector<std::uint8_t> vertex_done(g.vertex_count(), 0);

    auto process_vertex = [&](VertexId v) -> bool {
        if (vertex_done[v] || !faces.vertex_trusted(v) || g.degree(v) != q) return true;
        // Find a labeled corner face, then walk the rotation assigning labels.
        const std::size_t d = g.degree(v);
        std::size_t start = d;
        for (std::size_t i = 0; i < d; ++i) {
            if (label[faces.corner_face(g, v, i)] >= 0) { start = i; break; }
        }
        if (start == d) return true;  // nothing known here yet
        const int step = g.parity(v) == 0 ? 1 : static_cast<int>(q) - 1;
        std::int64_t cur = label[faces.corner_face(g, v, start)];
        for (std::size_t off = 1; off <= d; ++off) {
            cur = (cur + step) % q;
            FaceId f = faces.corner_face(g, v, (start + off) % d);
            if (label[f] < 0) {
                label[f] = cur;
                queue.push_back(f);
            } else if (label[f] != cur) {
                res.consistent = false;
                res.witness_vertex = v;
                res.label_a = static_cast<std::uint32_t>(label[f]) + 1;
                res.label_b = static_cast<std::uint32_t>(cur) + 1;
                return false;
            }
        }
        vertex_done[v] = 1;
        return true;
    };

    while (!queue.empty() && res.consistent) {
        FaceId f = queue.front();
        queue.pop_front();
        for (HalfEdgeId h : faces[f].boundary) {
            if (!process_vertex(g.origin(h))) break;
        }
    }

    if (res.consistent) {
        for (FaceId f : interior) {
            if (label[f] >= 0) {
                faces.at(f).label = static_cast<std::uint32_t>(label[f]) + 1;
                ++res.labeled_count;
            } else {
                res.unlabeled.push_back(f);
            }
        }
    }
    return res;
}

MeanExcessSeries mean_excess_series(const EmbeddedGraph& g, const FaceSet& faces,
                                    VertexId w0, std::uint32_t r_max, std::size_t window) {
    if (!faces.vertex_trusted(w0))
        throw UntrustedVertexError("mean_excess_series: basepoint is untrusted");

    auto dist = bfs_distances(g, w0);
    std::vector<std::vector<VertexId>> shell(r_max + 1);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (dist[v] <= r_max) shell[dist[v]].push_back(v);

    MeanExcessSeries series;
    Rational total(0);
    std::size_t count = 0;
    bool clipped = false;
    for (std::uint32_t r = 0; r <= r_max; ++r) {
        for (VertexId v : shell[r]) {
            if (!faces.vertex_trusted(v)) {
                clipped = true;
                continue;
            }
            total += excess(g, faces, v);
            ++count;
        }
        MeanExcessEntry e;
        e.r = r;
        e.n_vertices = count;
        e.total = total;
        e.clipped = clipped;
        e.mean = count ? total / Rational(static_cast<std::int64_t>(count)) : Rational(0);
        series.entries.push_back(e);
    }

    std::vector<const MeanExcessEntry*> trusted;
    for (const auto& e : series.entries)
        if (!e.clipped) trusted.push_back(&e);
    if (!trusted.empty()) {
        series.max_trusted_radius = trusted.back()->r;
        std::size_t w = window ? std::min(window, trusted.size())
                               : std::max<std::size_t>(1, trusted.size() / 2);
        series.window = w;
        Rational lo = trusted[trusted.size() - w]->mean;
        Rational hi = lo;
        for (std::size_t i = trusted.size() - w; i < trusted.size(); ++i) {
            lo = std::min(lo, trusted[i]->mean);
            hi = std::max(hi, trusted[i]->mean);
        }
        series.liminf_estimate = lo;
        series.limsup_estimate = hi;
    }
    return series;
}

std::optional<std::uint32_t> trusted_radius(const EmbeddedGraph& g, const FaceSet& faces,
                                            VertexId w0) {
    auto dist = bfs_distances(g, w0);
    std::uint32_t first_bad = std::numeric_limits<std::uint32_t>::max();
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (!faces.vertex_trusted(v) && dist[v] < first_bad) first_bad = dist[v];
    if (first_bad == std::numeric_limits<std::uint32_t>::max()) {
        // No contamination anywhere (e.g. sphere-like test graphs): everything
        // reachable is trusted.
        std::uint32_t far = 0;
        for (auto d : dist)
            if (d != std::numeric_limits<std::uint32_t>::max()) far = std::max(far, d);
        return far;
    }
    if (first_bad < 2) return std::nullopt;  // B(w0,1) already contaminated
    return first_bad - 2;                    // keep a one-ring buffer
}

}  // namespace speiser
