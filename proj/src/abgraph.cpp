#include "abperc/abgraph.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

#include "abperc/spatial_index.hpp"
#include "abperc/union_find.hpp"

namespace abperc {

ABGraph::ABGraph(std::size_t vertex_count, double witness_radius, Metric metric,
                 std::vector<std::uint32_t> witness_begin, std::vector<std::uint32_t> members)
    : vertex_count_(vertex_count),
      witness_radius_(witness_radius),
      metric_(metric),
      witness_begin_(std::move(witness_begin)),
      members_(std::move(members)) {
    if (witness_begin_.empty() || witness_begin_.back() != members_.size())
        throw std::invalid_argument("ABGraph: malformed witness table");

    // Inverse table: vertex -> witnesses.
    vertex_begin_.assign(vertex_count_ + 1, 0);
    for (auto v : members_) ++vertex_begin_[v + 1];
    for (std::size_t v = 0; v < vertex_count_; ++v) vertex_begin_[v + 1] += vertex_begin_[v];
    witnesses_.resize(members_.size());
    auto cursor = vertex_begin_;
    for (std::size_t w = 0; w + 1 < witness_begin_.size(); ++w)
        for (auto v : witness_members(w)) witnesses_[cursor[v]++] = static_cast<std::uint32_t>(w);

    UnionFind uf(vertex_count_);
    for (std::size_t w = 0; w + 1 < witness_begin_.size(); ++w) {
        const auto m = witness_members(w);
        for (std::size_t k = 1; k < m.size(); ++k) uf.unite(m[k - 1], m[k]);
    }
    component_ = uf.labels();
    component_count_ = uf.components();
}

std::vector<std::uint32_t> ABGraph::neighbours(std::uint32_t v) const {
    std::vector<std::uint32_t> out;
    for (auto w : vertex_witnesses(v))
        for (auto u : witness_members(w))
            if (u != v) out.push_back(u);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool ABGraph::is_isolated(std::uint32_t v) const {
    for (auto w : vertex_witnesses(v))
        if (witness_members(w).size() >= 2) return false;
    return true;
}

std::vector<Edge> ABGraph::edges() const {
    std::vector<Edge> out;
    for (std::size_t w = 0; w + 1 < witness_begin_.size(); ++w) {
        const auto m = witness_members(w);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = i + 1; j < m.size(); ++j) out.emplace_back(m[i], m[j]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GilbertGraph::GilbertGraph(std::vector<std::uint32_t> begin, std::vector<std::uint32_t> adjacency)
    : begin_(std::move(begin)), adjacency_(std::move(adjacency)) {
    UnionFind uf(vertex_count());
    for (std::uint32_t v = 0; v < vertex_count(); ++v)
        for (auto u : neighbours(v)) uf.unite(u, v);
    component_ = uf.labels();
    component_count_ = uf.components();
}

std::vector<Edge> GilbertGraph::edges() const {
    std::vector<Edge> out;
    for (std::uint32_t v = 0; v < vertex_count(); ++v)
        for (auto u : neighbours(v))
            if (v < u) out.emplace_back(v, u);
    return out;
}

namespace {

ABGraph build_with_witnesses(const PointSet& p1, const PointSet& p2, double radius, const Metric& metric) {
    std::vector<std::uint32_t> begin{0};
    std::vector<std::uint32_t> members;
    begin.reserve(p2.size() + 1);
    if (!p1.empty()) {
        const SpatialIndex index(p1, radius, metric);
        for (std::size_t w = 0; w < p2.size(); ++w) {
            const auto first = members.size();
            index.for_each_within(p2.point(w), radius, [&members](std::uint32_t id, double) { members.push_back(id); });
            std::sort(members.begin() + static_cast<std::ptrdiff_t>(first), members.end());
            begin.push_back(static_cast<std::uint32_t>(members.size()));
        }
    } else {
        begin.resize(p2.size() + 1, 0);
    }
    return ABGraph(p1.size(), radius, metric, std::move(begin), std::move(members));
}

void require_radius(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radius must be positive and finite");
}

}  // namespace

ABGraph build_ab_rgg(const PointSet& p1, const PointSet& p2, double r, const Metric& metric) {
    require_radius(r);
    if (!(p1.window == p2.window)) throw std::domain_error("build_ab_rgg: point sets must share the window");
    return build_with_witnesses(p1, p2, r, metric);
}

ABGraph build_ab_continuum(const PointSet& p1, const PointSet& p2, double r) {
    require_radius(r);
    if (p1.dim() != p2.dim() || !p2.window.contains(p1.window))
        throw std::domain_error("build_ab_continuum: witness window must contain the vertex window");
    return build_with_witnesses(p1, p2, 2.0 * r, Metric::euclidean());
}

GilbertGraph build_gilbert(const PointSet& ps, double r, const Metric& metric) {
    require_radius(r);
    const double reach = 2.0 * r;
    std::vector<std::uint32_t> begin{0};
    std::vector<std::uint32_t> adjacency;
    if (!ps.empty()) {
        const SpatialIndex index(ps, reach, metric);
        for (std::size_t v = 0; v < ps.size(); ++v) {
            const auto first = adjacency.size();
            index.for_each_within(ps.point(v), reach, [&](std::uint32_t id, double) {
                if (id != v) adjacency.push_back(id);
            });
            std::sort(adjacency.begin() + static_cast<std::ptrdiff_t>(first), adjacency.end());
            begin.push_back(static_cast<std::uint32_t>(adjacency.size()));
        }
    }
    return GilbertGraph(std::move(begin), std::move(adjacency));
}

MarkedABGraph build_marked_ab(const PointSet& phi, double p, double r, std::uint64_t seed) {
    auto [a, b] = split_marks(phi, p, seed);
    auto graph = build_ab_continuum(a, b, r);
    return {std::move(a), std::move(b), std::move(graph)};
}

bool verify_witnesses(const ABGraph& g, const PointSet& p1, const PointSet& p2) {
    const double radius2 = closed_radius2(g.witness_radius());
    for (const auto& [u, v] : g.edges()) {
        const auto wu = g.vertex_witnesses(u);
        const auto wv = g.vertex_witnesses(v);
        std::vector<std::uint32_t> common;
        std::set_intersection(wu.begin(), wu.end(), wv.begin(), wv.end(), std::back_inserter(common));
        const bool ok = std::any_of(common.begin(), common.end(), [&](std::uint32_t w) {
            const auto y = p2.point(w);
            return g.metric().distance2(p1.point(u), y) <= radius2 && g.metric().distance2(p1.point(v), y) <= radius2;
        });
        if (!ok) return false;
    }
    return true;
}

void write_edges_csv(std::ostream& os, const std::vector<Edge>& edges) {
    os << "u,v\n";
    for (const auto& [u, v] : edges) os << u << ',' << v << '\n';
}

nlohmann::ordered_json component_summary(const std::vector<std::uint32_t>& labels) {
    std::map<std::uint32_t, std::size_t> sizes;
    for (auto l : labels) ++sizes[l];
    std::map<std::size_t, std::size_t> histogram;
    std::size_t largest = 0;
    for (const auto& [label, size] : sizes) {
        ++histogram[size];
        largest = std::max(largest, size);
    }
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [size, count] : histogram) hist[std::to_string(size)] = count;
    nlohmann::ordered_json out;
    out["vertex_count"] = labels.size();
    out["component_count"] = sizes.size();
    out["largest_component"] = largest;
    out["size_histogram"] = std::move(hist);
    return out;
}

}  // namespace abperc
