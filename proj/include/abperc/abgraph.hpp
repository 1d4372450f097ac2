#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "json.hpp"

#include "abperc/geometry.hpp"
#include "abperc/pointprocess.hpp"

namespace abperc {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Graph on process-1 points whose edges are certified by witness points.
///
/// Only the witness neighbourhoods are stored: every vertex within the
/// witness radius of a witness is adjacent to every other such vertex.
/// Components come from linking each neighbourhood sequentially, which gives
/// the same partition as the clique edges without materialising them.
class ABGraph {
public:
    ABGraph(std::size_t vertex_count, double witness_radius, Metric metric,
            std::vector<std::uint32_t> witness_begin, std::vector<std::uint32_t> members);

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t witness_count() const { return witness_begin_.size() - 1; }
    double witness_radius() const { return witness_radius_; }
    const Metric& metric() const { return metric_; }

    /// Vertices within the witness radius of witness w, ascending.
    std::span<const std::uint32_t> witness_members(std::size_t w) const {
        return {members_.data() + witness_begin_[w], members_.data() + witness_begin_[w + 1]};
    }
    /// Witnesses within the witness radius of vertex v, ascending.
    std::span<const std::uint32_t> vertex_witnesses(std::uint32_t v) const {
        return {witnesses_.data() + vertex_begin_[v], witnesses_.data() + vertex_begin_[v + 1]};
    }

    const std::vector<std::uint32_t>& component_labels() const { return component_; }
    std::size_t component_count() const { return component_count_; }

    /// Distinct neighbours of v, ascending.
    std::vector<std::uint32_t> neighbours(std::uint32_t v) const;
    std::size_t degree(std::uint32_t v) const { return neighbours(v).size(); }
    bool is_isolated(std::uint32_t v) const;
    bool is_connected() const { return component_count_ <= 1; }
    bool same_component(std::uint32_t a, std::uint32_t b) const { return component_[a] == component_[b]; }

    /// Deduplicated edge list with u < v, sorted.
    std::vector<Edge> edges() const;

private:
    std::size_t vertex_count_;
    double witness_radius_;
    Metric metric_;
    std::vector<std::uint32_t> witness_begin_;
    std::vector<std::uint32_t> members_;
    std::vector<std::uint32_t> vertex_begin_;
    std::vector<std::uint32_t> witnesses_;
    std::vector<std::uint32_t> component_;
    std::size_t component_count_ = 0;
};

/// Distance-threshold graph: edge iff distance <= 2r.
class GilbertGraph {
public:
    GilbertGraph(std::vector<std::uint32_t> begin, std::vector<std::uint32_t> adjacency);

    std::size_t vertex_count() const { return begin_.size() - 1; }
    std::span<const std::uint32_t> neighbours(std::uint32_t v) const {
        return {adjacency_.data() + begin_[v], adjacency_.data() + begin_[v + 1]};
    }
    std::size_t degree(std::uint32_t v) const { return begin_[v + 1] - begin_[v]; }
    const std::vector<std::uint32_t>& component_labels() const { return component_; }
    std::size_t component_count() const { return component_count_; }
    bool is_connected() const { return component_count_ <= 1; }
    bool same_component(std::uint32_t a, std::uint32_t b) const { return component_[a] == component_[b]; }
    std::vector<Edge> edges() const;

private:
    std::vector<std::uint32_t> begin_;
    std::vector<std::uint32_t> adjacency_;
    std::vector<std::uint32_t> component_;
    std::size_t component_count_ = 0;
};

/// AB random geometric graph: Xi ~ Xj iff some witness Y has d(Xi,Y) <= r
/// and d(Xj,Y) <= r. Both point sets must share the window.
ABGraph build_ab_rgg(const PointSet& p1, const PointSet& p2, double r, const Metric& metric);

/// Continuum AB percolation graph: witness radius 2r, Euclidean metric.
/// p2's window must contain p1's (typically the 2r-dilated box).
ABGraph build_ab_continuum(const PointSet& p1, const PointSet& p2, double r);

GilbertGraph build_gilbert(const PointSet& ps, double r, const Metric& metric);

struct MarkedABGraph {
    PointSet vertices;   // A-marked points
    PointSet witnesses;  // B-marked points
    ABGraph graph;
};

/// Marks each point A with probability p, then builds the continuum AB graph
/// on the A points with the B points as witnesses.
MarkedABGraph build_marked_ab(const PointSet& phi, double p, double r, std::uint64_t seed);

inline const std::vector<std::uint32_t>& components(const ABGraph& g) { return g.component_labels(); }
inline std::size_t degree(const ABGraph& g, std::uint32_t v) { return g.degree(v); }
inline bool is_connected(const ABGraph& g) { return g.is_connected(); }

/// Re-checks every recorded edge against the raw point sets by brute force.
bool verify_witnesses(const ABGraph& g, const PointSet& p1, const PointSet& p2);

void write_edges_csv(std::ostream& os, const std::vector<Edge>& edges);
nlohmann::ordered_json component_summary(const std::vector<std::uint32_t>& labels);

}  // namespace abperc
