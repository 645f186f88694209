#include "speiser/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "speiser/kernels.hpp"

namespace speiser {

BallStatsSeries ball_stats(const EmbeddedGraph& g, const FaceSet& faces, VertexId w0,
                           std::uint32_t r_max) {
    if (!faces.vertex_trusted(w0))
        throw AnalysisError("ball_stats: basepoint is untrusted");
    if (excess(g, faces, w0).sign() >= 0)
        throw AnalysisError("ball_stats: basepoint must have negative excess");

    auto dist = bfs_distances(g, w0);
    std::vector<std::vector<VertexId>> shell(r_max + 1);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (dist[v] <= r_max) shell[dist[v]].push_back(v);

    BallStatsSeries series;
    BallStatsEntry acc;
    bool clipped = false;
    for (std::uint32_t r = 0; r <= r_max; ++r) {
        for (VertexId v : shell[r]) {
            if (!faces.vertex_trusted(v)) {
                clipped = true;
                continue;
            }
            Rational e = excess(g, faces, v);
            if (e.sign() > 0) ++acc.n_plus;
            else if (e.sign() < 0) ++acc.n_minus;
            else ++acc.n_zero;
            acc.total_excess += e;
        }
        BallStatsEntry entry = acc;
        entry.r = r;
        entry.clipped = clipped;
        std::size_t n = entry.size();
        entry.mean_excess = n ? entry.total_excess / Rational(static_cast<std::int64_t>(n))
                              : Rational(0);
        if (!clipped) series.max_trusted_radius = r;
        series.entries.push_back(std::move(entry));
    }
    return series;
}

GrowthFit growth_fit(const std::vector<std::size_t>& counts, std::uint32_t r_lo,
                     std::uint32_t r_hi) {
    if (r_hi >= counts.size() || r_lo > r_hi || r_hi - r_lo + 1 < 3)
        throw AnalysisError("growth_fit: bad radius range");
    const std::size_t n = r_hi - r_lo + 1;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    bool all_equal = true;
    for (std::uint32_t r = r_lo; r <= r_hi; ++r) {
        if (counts[r] == 0) throw AnalysisError("growth_fit: zero count at r=" + std::to_string(r));
        if (counts[r] != counts[r_lo]) all_equal = false;
        double x = r, y = std::log(static_cast<double>(counts[r]));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    if (all_equal) throw AnalysisError("growth_fit: degenerate series (all counts equal)");
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ss_res = 0, ss_tot = 0, ybar = sy / n;
    GrowthFit fit;
    fit.a = std::exp(slope);
    fit.r_lo = r_lo;
    fit.r_hi = r_hi;
    double c = std::numeric_limits<double>::infinity();
    for (std::uint32_t r = r_lo; r <= r_hi; ++r) {
        double y = std::log(static_cast<double>(counts[r]));
        double yhat = slope * r + intercept;
        ss_res += (y - yhat) * (y - yhat);
        ss_tot += (y - ybar) * (y - ybar);
        double ratio = static_cast<double>(counts[r]) / std::pow(fit.a, r);
        c = std::min(c, std::min(ratio, 1.0 / ratio));
    }
    fit.c = c;
    fit.quality = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 0.0;
    return fit;
}

GrowthFit growth_fit_tail(const std::vector<std::size_t>& counts, std::uint32_t r_max,
                          std::uint32_t min_points) {
    if (r_max + 1 > counts.size()) r_max = static_cast<std::uint32_t>(counts.size()) - 1;
    if (r_max + 1 < 6) throw AnalysisError("growth_fit: need at least 6 trusted radii");
    std::uint32_t r_lo = (r_max + 1) / 2;
    if (r_max - r_lo + 1 < min_points) r_lo = r_max >= min_points ? r_max - min_points + 1 : 0;
    return growth_fit(counts, r_lo, r_max);
}

std::vector<CutsetInfo> nash_williams_cutsets(const Assembly& a) {
    const std::uint32_t N = a.tree.ray_length;
    auto dist = bfs_distances(a.graph, a.w0);
    std::vector<CutsetInfo> cuts;
    for (std::uint32_t k = 1; k < N; ++k) {
        const Circle& circle = a.circles[a.tree.ray[k]];
        CutsetInfo info;
        info.generation = k;
        for (VertexId v : circle.vertices) {
            HalfEdgeId h = a.outward_half_edge[v];
            if (h == kNoHalfEdge)
                throw AnalysisError("cutset: pasting circle vertex without parent-side edge");
            info.edges.push_back(h);
        }
        // Vertices on the basepoint side: everything not reachable from the
        // truncation boundary once the cutset is removed.
        std::vector<std::uint8_t> cut(a.graph.half_edge_count(), 0);
        for (HalfEdgeId h : info.edges) { cut[h] = 1; cut[h ^ 1] = 1; }
        std::vector<std::uint8_t> far_side(a.graph.vertex_count(), 0);
        std::deque<VertexId> queue;
        VertexId top = a.circles[a.tree.ray[N]].vertices.front();
        queue.push_back(top);
        far_side[top] = 1;
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            for (HalfEdgeId h : a.graph.rotation(v)) {
                if (cut[h]) continue;
                VertexId u = a.graph.head(h);
                if (!far_side[u]) { far_side[u] = 1; queue.push_back(u); }
            }
        }
        if (far_side[a.w0])
            throw AnalysisError("cutset at generation " + std::to_string(k) +
                                " does not separate the basepoint from the boundary");
        std::uint32_t inner_max = 0;
        for (VertexId v = 0; v < a.graph.vertex_count(); ++v)
            if (!far_side[v] && dist[v] != std::numeric_limits<std::uint32_t>::max())
                inner_max = std::max(inner_max, dist[v]);
        info.inner_max_distance = inner_max;
        cuts.push_back(std::move(info));
    }
    // Disjointness is structural; verify anyway.
    std::vector<std::uint8_t> seen(a.graph.half_edge_count(), 0);
    for (const auto& c : cuts)
        for (HalfEdgeId h : c.edges) {
            if (seen[h]) throw AnalysisError("cutsets are not edge-disjoint");
            seen[h] = 1;
            seen[h ^ 1] = 1;
        }
    return cuts;
}

namespace {

/// Jacobi-preconditioned conjugate gradients on the Dirichlet-reduced graph
/// Laplacian. Matrix-free: the operator is deg(v)*x[v] - sum of neighbors.
struct LaplaceSystem {
    std::vector<std::uint32_t> row_start;
    std::vector<std::uint32_t> col;      // neighbor index among unknowns, or UINT32_MAX
    std::vector<double> fixed_rhs;       // contribution of Dirichlet nodes
    std::vector<double> degree;

    void apply(std::span<const double> x, std::span<double> y) const {
        const std::size_t n = degree.size();
        for (std::size_t i = 0; i < n; ++i) {
            double s = degree[i] * x[i];
            for (std::uint32_t k = row_start[i]; k < row_start[i + 1]; ++k)
                if (col[k] != std::numeric_limits<std::uint32_t>::max()) s -= x[col[k]];
            y[i] = s;
        }
    }
};

}  // namespace

double effective_resistance(const EmbeddedGraph& g, VertexId w0, std::uint32_t r,
                            double rel_residual) {
    if (r == 0) throw AnalysisError("effective_resistance: radius must be positive");
    auto ball = combinatorial_ball(g, w0, r);

    // Unknowns: interior of the ball minus the source. Potentials: 1 at w0,
    // 0 on the sphere {d == r}.
    std::vector<std::uint32_t> index(g.vertex_count(), std::numeric_limits<std::uint32_t>::max());
    std::vector<VertexId> unknowns;
    for (VertexId v : ball.order) {
        if (v == w0 || ball.dist[v] == r) continue;
        index[v] = static_cast<std::uint32_t>(unknowns.size());
        unknowns.push_back(v);
    }

    LaplaceSystem sys;
    sys.row_start.push_back(0);
    sys.degree.reserve(unknowns.size());
    sys.fixed_rhs.assign(unknowns.size(), 0.0);
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
        VertexId v = unknowns[i];
        double deg = 0;
        for (HalfEdgeId h : g.rotation(v)) {
            VertexId u = g.head(h);
            if (ball.dist[u] > r) continue;  // edge leaves the ball: no conductance
            deg += 1.0;
            if (u == w0) {
                sys.fixed_rhs[i] += 1.0;
                sys.col.push_back(std::numeric_limits<std::uint32_t>::max());
            } else if (ball.dist[u] == r) {
                sys.col.push_back(std::numeric_limits<std::uint32_t>::max());
            } else {
                sys.col.push_back(index[u]);
            }
        }
        sys.degree.push_back(deg);
        sys.row_start.push_back(static_cast<std::uint32_t>(sys.col.size()));
    }

    const std::size_t n = unknowns.size();
    std::vector<double> x(n, 0.0), res(n), p(n), ap(n), z(n);
    sys.apply(x, ap);
    for (std::size_t i = 0; i < n; ++i) res[i] = sys.fixed_rhs[i] - ap[i];
    double b_norm = std::sqrt(kernels::norm2_sq(res));
    if (n > 0 && b_norm > 0) {
        for (std::size_t i = 0; i < n; ++i) z[i] = res[i] / sys.degree[i];
        p = z;
        double rz = kernels::dot(res, z);
        const std::size_t max_iter = 20 * n + 100;
        for (std::size_t it = 0; it < max_iter; ++it) {
            sys.apply(p, ap);
            double alpha = rz / kernels::dot(p, ap);
            kernels::axpy(alpha, p, x);
            kernels::axpy(-alpha, ap, res);
            double rn = std::sqrt(kernels::norm2_sq(res));
            if (rn <= rel_residual * b_norm) break;
            if (it + 1 == max_iter)
                throw AnalysisError("effective_resistance: CG failed to converge, residual " +
                                    std::to_string(rn / b_norm));
            for (std::size_t i = 0; i < n; ++i) z[i] = res[i] / sys.degree[i];
            double rz_new = kernels::dot(res, z);
            kernels::xpby(z, rz_new / rz, p);
            rz = rz_new;
        }
    }

    // Current out of the source (potential 1) into the ball.
    double current = 0;
    for (HalfEdgeId h : g.rotation(w0)) {
        VertexId u = g.head(h);
        if (ball.dist[u] > r) continue;
        double pu = (u == w0) ? 1.0 : (ball.dist[u] == r ? 0.0
                       : x[index[u]]);
        current += 1.0 - pu;
    }
    if (current <= 0) throw AnalysisError("effective_resistance: no current path");
    return 1.0 / current;
}

RecurrenceReport recurrence_report(const Assembly& a, std::uint32_t r_max, double rel_residual) {
    RecurrenceReport rep;
    rep.r_max = r_max;
    rep.cutsets = nash_williams_cutsets(a);
    double sum = 0;
    for (const auto& c : rep.cutsets) {
        sum += 1.0 / static_cast<double>(c.edges.size());
        rep.nash_williams_partial.push_back(sum);
    }
    rep.r_eff.assign(r_max + 1, 0.0);
    rep.nw_lower_bound.assign(r_max + 1, 0.0);
    for (std::uint32_t r = 1; r <= r_max; ++r) {
        rep.r_eff[r] = effective_resistance(a.graph, a.w0, r, rel_residual);
        double nw = 0;
        for (const auto& c : rep.cutsets)
            if (c.inner_max_distance < r) nw += 1.0 / static_cast<double>(c.edges.size());
        rep.nw_lower_bound[r] = nw;
    }
    return rep;
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace

WalkReturnStats random_walk_return(const std::vector<std::vector<std::uint32_t>>& adjacency,
                                   const std::vector<std::uint8_t>& trusted, std::uint32_t w0,
                                   std::uint32_t horizon, std::size_t trials,
                                   std::uint64_t seed) {
    if (trials < 1) throw AnalysisError("random_walk_return: trials must be >= 1");
    WalkReturnStats stats;
    std::size_t returned = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(splitmix64(seed ^ (0x517cc1b727220a95ULL * (t + 1))));
        std::uint32_t v = w0;
        bool excluded = false;
        std::uint32_t first_return = 0;
        for (std::uint32_t step = 1; step <= horizon; ++step) {
            const auto& nbr = adjacency[v];
            v = nbr[rng() % nbr.size()];
            if (!trusted.empty() && !trusted[v]) { excluded = true; break; }
            if (v == w0 && first_return == 0) first_return = step;
        }
        if (excluded) {
            ++stats.excluded;
            continue;
        }
        stats.first_return_step.push_back(first_return);
        if (first_return > 0) ++returned;
    }
    stats.trials = trials - stats.excluded;
    if (stats.trials > 0) {
        stats.frequency = static_cast<double>(returned) / static_cast<double>(stats.trials);
        stats.confidence_radius =
            1.96 * std::sqrt(stats.frequency * (1.0 - stats.frequency) /
                             static_cast<double>(stats.trials));
    }
    return stats;
}

WalkReturnStats random_walk_return(const EmbeddedGraph& g, const FaceSet& faces, VertexId w0,
                                   std::uint32_t horizon, std::size_t trials,
                                   std::uint64_t seed) {
    std::vector<std::vector<std::uint32_t>> adjacency(g.vertex_count());
    std::vector<std::uint8_t> trusted(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (HalfEdgeId h : g.rotation(v)) adjacency[v].push_back(g.head(h));
        trusted[v] = faces.vertex_trusted(v) ? 1 : 0;
    }
    return random_walk_return(adjacency, trusted, w0, horizon, trials, seed);
}

ChooseSResult choose_s(const PrunedTree& tree, std::uint32_t circle_length, std::uint32_t s_lo,
                       std::uint32_t s_hi, double epsilon_target) {
    if (s_lo < 1 || s_lo > s_hi) throw AnalysisError("choose_s: empty range");
    ChooseSResult best;
    double best_margin = -std::numeric_limits<double>::infinity();
    for (std::uint32_t s = s_lo; s <= s_hi; ++s) {
        BuilderConfig cfg;
        cfg.ray_length = tree.ray_length;
        cfg.circle_length = circle_length;
        cfg.schedule = SchedulePolicy::constant(s);
        Assembly a = assemble(tree, cfg);
        FaceSet faces(a.graph);
        auto r_trust = trusted_radius(a.graph, faces, a.w0);
        if (!r_trust || *r_trust < 1)
            throw AnalysisError("choose_s: truncation has no trusted radii");
        auto stats = ball_stats(a.graph, faces, a.w0, *r_trust);
        std::vector<std::size_t> n_minus(stats.entries.size());
        for (std::size_t r = 0; r < stats.entries.size(); ++r)
            n_minus[r] = stats.entries[r].n_minus;
        GrowthFit fit = growth_fit_tail(n_minus, stats.max_trusted_radius);
        double margin = std::numeric_limits<double>::infinity();
        for (std::uint32_t r = 1; r <= stats.max_trusted_radius; ++r)
            margin = std::min(margin,
                              -stats.at(r).total_excess.to_double() / std::pow(fit.a, r));
        best.sweep.emplace_back(s, margin);
        if (margin > best_margin) best_margin = margin;
        if (best.s == 0 && margin > epsilon_target) {
            best.s = s;
            best.epsilon = margin;
            best.growth_a = fit.a;
        }
    }
    if (best.s == 0)
        throw AnalysisError("choose_s: no s in range reaches the excess target; best margin " +
                            std::to_string(best_margin));
    return best;
}

}  // namespace speiser
