#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "abperc/geometry.hpp"

namespace abperc {

/// Axis-aligned box [lows, highs], optionally with periodic boundary.
class Window {
public:
    Window(std::vector<double> lows, std::vector<double> highs, bool wrap = false);

    /// [0, side]^d with periodic boundary.
    static Window torus(int d, double side = 1.0);
    static Window box(int d, double lo, double hi);

    int dim() const { return static_cast<int>(lows_.size()); }
    const std::vector<double>& lows() const { return lows_; }
    const std::vector<double>& highs() const { return highs_; }
    bool wraps() const { return wrap_; }
    double extent(int axis) const { return highs_[axis] - lows_[axis]; }
    double volume() const;

    bool contains(ConstPoint x) const;
    bool contains(const Window& other) const;
    /// Box grown by `margin` on every side (never periodic).
    Window dilated(double margin) const;
    /// Metric matching the boundary: toroidal for a periodic window.
    Metric metric() const;

    bool operator==(const Window&) const = default;

private:
    std::vector<double> lows_;
    std::vector<double> highs_;
    bool wrap_;
};

/// Finite sample of a point process on a window. Coordinates are stored
/// row-major, dim() values per point.
struct PointSet {
    Window window;
    double intensity = 0.0;
    std::vector<double> coords;
    std::uint64_t seed = 0;
    std::string label;

    PointSet(Window w, double intensity_, std::uint64_t seed_ = 0, std::string label_ = {})
        : window(std::move(w)), intensity(intensity_), seed(seed_), label(std::move(label_)) {}

    int dim() const { return window.dim(); }
    std::size_t size() const { return coords.size() / static_cast<std::size_t>(dim()); }
    bool empty() const { return coords.empty(); }
    ConstPoint point(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(dim()), static_cast<std::size_t>(dim())};
    }
    void push_back(ConstPoint x);
};

/// Homogeneous Poisson sample: count ~ Poisson(intensity·volume), then
/// i.i.d. uniform positions. Fully determined by `seed`.
PointSet sample_poisson(const Window& window, double intensity, std::uint64_t seed, std::string label = {});

/// Independent thinning: each point goes to the first output with probability p.
std::pair<PointSet, PointSet> split_marks(const PointSet& ps, double p, std::uint64_t seed);

/// Copy of ps with x appended (Palm version).
PointSet palm_insert(const PointSet& ps, ConstPoint x);

// Reproducibility dumps.
void write_csv(std::ostream& os, const PointSet& ps);
nlohmann::ordered_json to_json(const PointSet& ps);

}  // namespace abperc
