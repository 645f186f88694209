#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "speiser/graph.hpp"
#include "speiser/rational.hpp"

namespace speiser {

struct UntrustedVertexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Excess of one face profile: 2 - sum over incidences of (1 - 1/k_f).
/// half_degrees are the k values of the faces at the vertex, counted with
/// multiplicity along the rotation; kInfiniteHalfDegree contributes a full
/// unit deficit.
Rational excess_from_profile(std::span<const std::uint32_t> half_degrees);

/// Excess of a vertex; exact. Throws UntrustedVertexError when some incident
/// face touches the truncation boundary.
Rational excess(const EmbeddedGraph& g, const FaceSet& faces, VertexId v);

/// Per-vertex excess for the whole graph. Untrusted vertices get nullopt.
std::vector<std::optional<Rational>> excess_field(const EmbeddedGraph& g, const FaceSet& faces);

struct ValidityViolation {
    enum Kind { NotConnected, BadDegree, OddCycleEdge } kind;
    std::string detail;
};

struct ValidityReport {
    std::vector<ValidityViolation> violations;
    bool valid() const { return violations.empty(); }
    std::string summary() const;
};

/// Truncated Speiser-graph validity: connected, interior vertices of degree q,
/// bipartite (checked per edge). Violations are data, not errors.
ValidityReport validate_speiser(const EmbeddedGraph& g, std::uint32_t q);

struct LabelingResult {
    bool consistent = true;
    // On conflict: vertex where propagation disagreed and the two labels.
    VertexId witness_vertex = kNoVertex;
    std::uint32_t label_a = 0, label_b = 0;
    // Interior faces that propagation never reached (e.g. pockets cut off by
    // the untrusted region).
    std::vector<FaceId> unlabeled;
    std::size_t labeled_count = 0;
};

/// Assigns labels 1..q to interior faces so that around every trusted
/// degree-q vertex the labels appear in cyclic order (counterclockwise at
/// parity-0 vertices, reversed at parity-1). Labels are written into `faces`.
/// `forced` pre-assigns labels (the first acts as the seed); an inconsistent
/// forcing produces a conflict witness.
LabelingResult label_faces(const EmbeddedGraph& g, FaceSet& faces, std::uint32_t q,
                           const std::vector<std::pair<FaceId, std::uint32_t>>& forced = {});

struct MeanExcessEntry {
    std::uint32_t r = 0;
    std::size_t n_vertices = 0;
    Rational total;
    Rational mean;
    bool clipped = false;  // some vertex in the ball is untrusted
};

struct MeanExcessSeries {
    std::vector<MeanExcessEntry> entries;
    // Estimates over the trailing window of trusted radii.
    std::size_t window = 0;
    std::optional<Rational> limsup_estimate;
    std::optional<Rational> liminf_estimate;
    std::uint32_t max_trusted_radius = 0;
};

/// Exact per-radius mean excess over combinatorial balls around w0.
/// Radii whose ball contains an untrusted vertex are flagged and excluded
/// from the limsup/liminf estimates. window = 0 means "trailing half".
MeanExcessSeries mean_excess_series(const EmbeddedGraph& g, const FaceSet& faces,
                                    VertexId w0, std::uint32_t r_max, std::size_t window = 0);

/// Largest r such that B(w0, r+1) contains only trusted vertices.
/// Returns nullopt when even B(w0, 1) is contaminated.
std::optional<std::uint32_t> trusted_radius(const EmbeddedGraph& g, const FaceSet& faces,
                                            VertexId w0);

}  // namespace speiser
