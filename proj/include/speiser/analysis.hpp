#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "speiser/builder.hpp"
#include "speiser/excess.hpp"
#include "speiser/graph.hpp"
#include "speiser/rational.hpp"

namespace speiser {

struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BallStatsEntry {
    std::uint32_t r = 0;
    std::size_t n_plus = 0, n_minus = 0, n_zero = 0;
    Rational total_excess;
    Rational mean_excess;
    bool clipped = false;
    std::size_t size() const { return n_plus + n_minus + n_zero; }
};

struct BallStatsSeries {
    std::vector<BallStatsEntry> entries;
    std::uint32_t max_trusted_radius = 0;  // largest r with clipped == false

    const BallStatsEntry& at(std::uint32_t r) const { return entries[r]; }
};

/// Exact per-radius counts of positive/negative/zero-excess vertices and the
/// running total. Requires a basepoint with negative excess.
BallStatsSeries ball_stats(const EmbeddedGraph& g, const FaceSet& faces, VertexId w0,
                           std::uint32_t r_max);

struct GrowthFit {
    double a = 0;        // growth base
    double c = 0;        // two-sided constant: c*a^r <= n_r <= a^r / c on the fitted range
    double quality = 0;  // coefficient of determination of the log-linear fit
    std::uint32_t r_lo = 0, r_hi = 0;
};

/// Least-squares fit of log(counts[r]) against r over [r_lo, r_hi].
/// Throws on zero counts in range or a degenerate (constant) series.
GrowthFit growth_fit(const std::vector<std::size_t>& counts, std::uint32_t r_lo,
                     std::uint32_t r_hi);

/// Tail fit: upper half of the trusted range (at least min_points radii).
GrowthFit growth_fit_tail(const std::vector<std::size_t>& counts, std::uint32_t r_max,
                          std::uint32_t min_points = 4);

struct CutsetInfo {
    std::uint32_t generation = 0;         // ray index k: the circle between v_k and v_{k+1}
    std::vector<HalfEdgeId> edges;        // parent-side edges of the pasting circle
    std::uint32_t inner_max_distance = 0; // max d(w0, .) on the basepoint side
};

struct RecurrenceReport {
    std::vector<CutsetInfo> cutsets;               // generations 1..N-1
    std::vector<double> nash_williams_partial;     // partial sums of 1/|cutset|
    std::vector<double> r_eff;                     // indexed by radius
    std::vector<double> nw_lower_bound;            // NW sum over cutsets inside each radius
    std::uint32_t r_max = 0;
};

/// Edge cutsets given by the ray pasting circles: each consists of the L
/// parent-side edges of one circle; removing any one disconnects w0 from the
/// truncation boundary.
std::vector<CutsetInfo> nash_williams_cutsets(const Assembly& a);

/// Effective resistance between w0 and the sphere of radius r (unit
/// conductances), solved by Jacobi-preconditioned conjugate gradients to the
/// given relative residual.
double effective_resistance(const EmbeddedGraph& g, VertexId w0, std::uint32_t r,
                            double rel_residual = 1e-10);

/// Resistance series plus Nash-Williams lower bounds for r = 1..r_max.
RecurrenceReport recurrence_report(const Assembly& a, std::uint32_t r_max,
                                   double rel_residual = 1e-10);

struct WalkReturnStats {
    double frequency = 0;        // returns within the horizon / valid trials
    double confidence_radius = 0;  // 95% normal-approximation binomial bound
    std::size_t trials = 0;
    std::size_t excluded = 0;    // walks that left the trusted region
    std::vector<std::uint32_t> first_return_step;  // per valid trial; 0 = no return
};

/// Simple random walk from w0; counts returns within the horizon. Trials that
/// step onto an untrusted vertex are excluded (and counted). Deterministic
/// for a fixed seed: per-trial generators are split from the seed by counter.
WalkReturnStats random_walk_return(const EmbeddedGraph& g, const FaceSet& faces, VertexId w0,
                                   std::uint32_t horizon, std::size_t trials, std::uint64_t seed);

/// Same walk on a bare adjacency list (self-loops allowed); trusted may be
/// empty meaning "everything trusted".
WalkReturnStats random_walk_return(const std::vector<std::vector<std::uint32_t>>& adjacency,
                                   const std::vector<std::uint8_t>& trusted, std::uint32_t w0,
                                   std::uint32_t horizon, std::size_t trials, std::uint64_t seed);

struct ChooseSResult {
    std::uint32_t s = 0;
    double epsilon = 0;      // witnessed min over trusted r >= 1 of -total(r)/a^r
    double growth_a = 0;
    std::vector<std::pair<std::uint32_t, double>> sweep;  // (s, margin) for all tried s
};

/// Smallest s in [s_lo, s_hi] whose truncation satisfies
/// total_excess(r) <= -epsilon_target * a^r at every trusted r >= 1.
ChooseSResult choose_s(const PrunedTree& tree, std::uint32_t circle_length, std::uint32_t s_lo,
                       std::uint32_t s_hi, double epsilon_target);

}  // namespace speiser
