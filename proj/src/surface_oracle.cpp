#include "speiser/surface_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace speiser::surface {

namespace {

/// Binary min-heap with handles (decrease-key), keyed by double.
class IndexedHeap {
public:
    explicit IndexedHeap(std::size_t n) : pos_(n, kAbsent) {}

    bool empty() const { return heap_.empty(); }

    void push_or_decrease(std::uint32_t id, double key) {
        if (pos_[id] == kAbsent) {
            pos_[id] = static_cast<std::uint32_t>(heap_.size());
            heap_.push_back({key, id});
            sift_up(pos_[id]);
        } else if (key < heap_[pos_[id]].key) {
            heap_[pos_[id]].key = key;
            sift_up(pos_[id]);
        }
    }

    std::pair<std::uint32_t, double> pop() {
        auto top = heap_.front();
        pos_[top.id] = kDone;
        heap_.front() = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            pos_[heap_.front().id] = 0;
            sift_down(0);
        }
        return {top.id, top.key};
    }

    bool settled(std::uint32_t id) const { return pos_[id] == kDone; }

private:
    struct Node {
        double key;
        std::uint32_t id;
    };
    static constexpr std::uint32_t kAbsent = 0xffffffffu;
    static constexpr std::uint32_t kDone = 0xfffffffeu;
    std::vector<Node> heap_;
    std::vector<std::uint32_t> pos_;

    void sift_up(std::uint32_t i) {
        Node n = heap_[i];
        while (i > 0) {
            std::uint32_t p = (i - 1) / 2;
            if (heap_[p].key <= n.key) break;
            heap_[i] = heap_[p];
            pos_[heap_[i].id] = i;
            i = p;
        }
        heap_[i] = n;
        pos_[n.id] = i;
    }
    void sift_down(std::uint32_t i) {
        Node n = heap_[i];
        const std::uint32_t sz = static_cast<std::uint32_t>(heap_.size());
        while (true) {
            std::uint32_t c = 2 * i + 1;
            if (c >= sz) break;
            if (c + 1 < sz && heap_[c + 1].key < heap_[c].key) ++c;
            if (heap_[c].key >= n.key) break;
            heap_[i] = heap_[c];
            pos_[heap_[i].id] = i;
            i = c;
        }
        heap_[i] = n;
        pos_[n.id] = i;
    }
};

}  // namespace

MeshOracle::MeshOracle(double x_min, double x_max, double y_min, double y_max, double h,
                       std::size_t max_nodes)
    : h_(h) {
    if (h <= 0) throw DomainError("MeshOracle: h must be positive");
    // Snap so that (0, 1) is a node.
    std::int64_t i_lo = static_cast<std::int64_t>(std::floor(x_min / h)) - 1;
    std::int64_t i_hi = static_cast<std::int64_t>(std::ceil(x_max / h)) + 1;
    std::int64_t j_lo = static_cast<std::int64_t>(std::floor((y_min - 1.0) / h)) - 1;
    std::int64_t j_hi = static_cast<std::int64_t>(std::ceil((y_max - 1.0) / h)) + 1;
    x0_ = h * static_cast<double>(i_lo);
    y0_ = 1.0 + h * static_cast<double>(j_lo);
    nx_ = i_hi - i_lo + 1;
    ny_ = j_hi - j_lo + 1;
    std::size_t n = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
    if (n > max_nodes)
        throw DomainError("MeshOracle: " + std::to_string(n) +
                          " nodes exceed the budget; increase h");
    dist_.assign(n, std::numeric_limits<double>::infinity());
    run_dijkstra((-i_lo) + nx_ * (-j_lo));
}

MeshOracle MeshOracle::for_radius(double r, double h, std::size_t max_nodes) {
    BoundingBox b = ball_bounding_box(r);
    return MeshOracle(b.x_min, b.x_max, b.y_min, b.y_max, h, max_nodes);
}

bool MeshOracle::in_box(double x, double y) const {
    return x >= x0_ && x <= x0_ + h_ * static_cast<double>(nx_ - 1) && y >= y0_ &&
           y <= y0_ + h_ * static_cast<double>(ny_ - 1);
}

double MeshOracle::at(double x, double y) const {
    if (!in_box(x, y)) throw DomainError("MeshOracle::at: point outside the box");
    std::int64_t i = static_cast<std::int64_t>(std::llround((x - x0_) / h_));
    std::int64_t j = static_cast<std::int64_t>(std::llround((y - y0_) / h_));
    return dist_[static_cast<std::size_t>(i + nx_ * j)];
}

void MeshOracle::run_dijkstra(std::int64_t src) {
    const std::int64_t nx = nx_, ny = ny_;
    static constexpr int dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    const double diag = std::sqrt(2.0);

    IndexedHeap heap(dist_.size());
    dist_[static_cast<std::size_t>(src)] = 0.0;
    heap.push_or_decrease(static_cast<std::uint32_t>(src), 0.0);
    while (!heap.empty()) {
        auto [id, d] = heap.pop();
        dist_[id] = d;
        std::int64_t i = id % nx, j = id / nx;
        double y = y0_ + h_ * static_cast<double>(j);
        for (int k = 0; k < 8; ++k) {
            std::int64_t ii = i + dx[k], jj = j + dy[k];
            if (ii < 0 || ii >= nx || jj < 0 || jj >= ny) continue;
            std::uint32_t nid = static_cast<std::uint32_t>(ii + nx * jj);
            if (heap.settled(nid)) continue;
            double step = (k < 4 ? 1.0 : diag) * h_;
            double ym = y + 0.5 * h_ * static_cast<double>(dy[k]);
            double w = metric_density(ym) * step;
            double nd = d + w;
            if (nd < dist_[nid]) {
                dist_[nid] = nd;
                heap.push_or_decrease(nid, nd);
            }
        }
    }
}

namespace {

struct Cell {
    double x0, x1, y0, y1;
};

struct IndicatorState {
    const Distancer* d;
    double r;
    double h_min;
    double inside = 0;
    double undecided = 0;
    std::size_t cells = 0;
};

// Smooth density integral over a decided cell (3x3 Simpson; the densities are
// smooth inside each region, and cells never straddle the interface).
double cell_mass(const Cell& c) {
    // The densities depend on y only; Simpson across the cell height.
    const double ys[3] = {c.y0, 0.5 * (c.y0 + c.y1), c.y1};
    const double wy[3] = {1, 4, 1};
    double s = 0;
    for (int j = 0; j < 3; ++j) {
        double lam = metric_density(ys[j]);
        s += wy[j] * lam * lam;
    }
    return s * (c.x1 - c.x0) * (c.y1 - c.y0) / 6.0;
}

void subdivide(IndicatorState& st, const Cell& c) {
    ++st.cells;
    double cx = 0.5 * (c.x0 + c.x1), cy = 0.5 * (c.y0 + c.y1);
    double dc = (*st.d)(cx, cy);
    // Densest corner bounds the metric radius of the cell.
    double lam_max = metric_density(c.y0);
    double half_diag = 0.5 * std::hypot(c.x1 - c.x0, c.y1 - c.y0);
    double slack = lam_max * half_diag;
    if (dc + slack <= st.r) {
        st.inside += cell_mass(c);
        return;
    }
    if (dc - slack >= st.r) return;
    if (std::max(c.x1 - c.x0, c.y1 - c.y0) < st.h_min) {
        st.undecided += lam_max * lam_max * (c.x1 - c.x0) * (c.y1 - c.y0);
        return;
    }
    if (c.x1 - c.x0 >= c.y1 - c.y0) {
        subdivide(st, {c.x0, cx, c.y0, c.y1});
        subdivide(st, {cx, c.x1, c.y0, c.y1});
    } else {
        subdivide(st, {c.x0, c.x1, c.y0, cy});
        subdivide(st, {c.x0, c.x1, cy, c.y1});
    }
}

}  // namespace

IndicatorAreas indicator_ball_areas(const Distancer& d, double r, double h_min) {
    if (r <= 0 || r > d.max_radius())
        throw DomainError("indicator_ball_areas: bad radius");
    BoundingBox b = ball_bounding_box(r);
    IndicatorAreas out;

    IndicatorState upper{&d, r, h_min};
    subdivide(upper, {b.x_min, b.x_max, 1.0, b.y_max});
    out.upper_lo = upper.inside;
    out.upper_hi = upper.inside + upper.undecided;

    IndicatorState lower{&d, r, h_min};
    subdivide(lower, {b.x_min, b.x_max, b.y_min, 1.0});
    out.lower_lo = lower.inside;
    out.lower_hi = lower.inside + lower.undecided;

    out.cells = upper.cells + lower.cells;
    double mid = out.upper_mid() + out.lower_mid();
    out.achieved_rel_tol =
        mid > 0 ? 0.5 * (upper.undecided + lower.undecided) / mid : 0.0;
    return out;
}

}  // namespace speiser::surface
