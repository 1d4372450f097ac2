#pragma once

#include <cstdint>
#include <vector>

#include "abperc/pointprocess.hpp"

namespace abperc {

enum class LatticeKind { triangular, z_star_d };

/// Finite site lattice of size^dim sites placed at `origin`.
///   triangular  rhombus in axial coordinates (i, j) -> origin + i e1 + j e2,
///               edge length `scale`, six neighbours
///   z_star_d    cubic cells of side `scale`, full Moore neighbourhood
/// Site index: i0 + size*i1 + size^2*i2 ... Crossings run along axis 0.
struct LatticeSpec {
    LatticeKind kind = LatticeKind::triangular;
    int dim = 2;
    double scale = 1.0;
    std::size_t size = 0;
    std::vector<double> origin;

    std::size_t site_count() const;
    std::vector<std::uint32_t> neighbours(std::uint32_t site) const;
    std::vector<std::size_t> coordinates(std::uint32_t site) const;
};

/// Lattice for points of a word with minimal radius sum r0: triangular edge
/// r0/2 (d = 2) or cube side r0/(2√d), fitted inside `window`.
LatticeSpec lattice_for_window(const Window& window, LatticeKind kind, double r0);

/// Left-right crossing through open sites.
bool lattice_crossing(const LatticeSpec& spec, const std::vector<std::uint8_t>& open);

/// Per-site uniforms; site s is open at p iff u_s < p.
std::vector<double> site_uniforms(const LatticeSpec& spec, std::uint64_t seed);

bool site_percolation_crossing(const LatticeSpec& spec, double p, std::uint64_t seed);

/// Smallest p at which the coupled configuration crosses (sites added in
/// increasing order of their uniforms). Crossing at p iff threshold < p.
double crossing_threshold(const LatticeSpec& spec, std::uint64_t seed);

/// Site open iff its flower (triangular) or cube (Z*^d) holds at least one
/// point of every process. The flower of a triangular site with edge a is
/// the one of radius 2a.
std::vector<std::uint8_t> occupancy_sites(const std::vector<PointSet>& processes, const LatticeSpec& spec);

}  // namespace abperc
