#include "abperc/pointprocess.hpp"

#include <ostream>
#include <stdexcept>

#include "abperc/rng.hpp"

namespace abperc {

Window::Window(std::vector<double> lows, std::vector<double> highs, bool wrap)
    : lows_(std::move(lows)), highs_(std::move(highs)), wrap_(wrap) {
    if (lows_.size() != highs_.size()) throw std::invalid_argument("Window: lows/highs dimension mismatch");
    require_dimension(static_cast<int>(lows_.size()), 1);
    for (std::size_t i = 0; i < lows_.size(); ++i)
        if (!(highs_[i] > lows_[i])) throw std::invalid_argument("Window: highs must exceed lows");
    if (wrap_) {
        for (std::size_t i = 1; i < lows_.size(); ++i)
            if (extent(static_cast<int>(i)) != extent(0))
                throw std::invalid_argument("Window: torus requires equal side lengths");
    }
}

Window Window::torus(int d, double side) {
    return Window(std::vector<double>(d, 0.0), std::vector<double>(d, side), true);
}

Window Window::box(int d, double lo, double hi) {
    return Window(std::vector<double>(d, lo), std::vector<double>(d, hi), false);
}

double Window::volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= extent(i);
    return v;
}

bool Window::contains(ConstPoint x) const {
    if (static_cast<int>(x.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (x[i] < lows_[i] || x[i] > highs_[i]) return false;
    return true;
}

bool Window::contains(const Window& other) const {
    if (other.dim() != dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (other.lows_[i] < lows_[i] || other.highs_[i] > highs_[i]) return false;
    return true;
}

Window Window::dilated(double margin) const {
    if (margin < 0.0) throw std::invalid_argument("Window::dilated: negative margin");
    auto lo = lows_;
    auto hi = highs_;
    for (int i = 0; i < dim(); ++i) {
        lo[i] -= margin;
        hi[i] += margin;
    }
    return Window(std::move(lo), std::move(hi), false);
}

Metric Window::metric() const { return wrap_ ? Metric::toroidal(extent(0)) : Metric::euclidean(); }

void PointSet::push_back(ConstPoint x) {
    if (static_cast<int>(x.size()) != dim()) throw std::invalid_argument("PointSet: dimension mismatch");
    coords.insert(coords.end(), x.begin(), x.end());
}

PointSet sample_poisson(const Window& window, double intensity, std::uint64_t seed, std::string label) {
    if (intensity < 0.0 || !std::isfinite(intensity))
        throw std::domain_error("sample_poisson: intensity must be finite and non-negative");
    PointSet ps(window, intensity, seed, std::move(label));
    Rng rng(seed);
    const auto count = rng.poisson(intensity * window.volume());
    const int d = window.dim();
    ps.coords.resize(count * static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < count; ++i)
        for (int k = 0; k < d; ++k)
            ps.coords[i * d + k] = rng.uniform(window.lows()[k], window.highs()[k]);
    return ps;
}

std::pair<PointSet, PointSet> split_marks(const PointSet& ps, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("split_marks: p must lie in [0, 1]");
    PointSet first(ps.window, ps.intensity * p, seed, ps.label + "^A");
    PointSet second(ps.window, ps.intensity * (1.0 - p), seed, ps.label + "^B");
    Rng rng(seed);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (rng.uniform() < p)
            first.push_back(ps.point(i));
        else
            second.push_back(ps.point(i));
    }
    return {std::move(first), std::move(second)};
}

PointSet palm_insert(const PointSet& ps, ConstPoint x) {
    if (!ps.window.contains(x)) throw std::domain_error("palm_insert: point outside window");
    PointSet out = ps;
    out.push_back(x);
    return out;
}

void write_csv(std::ostream& os, const PointSet& ps) {
    os << "id";
    for (int k = 1; k <= ps.dim(); ++k) os << ",x" << k;
    os << '\n';
    os.precision(17);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        os << i;
        for (double v : ps.point(i)) os << ',' << v;
        os << '\n';
    }
}

nlohmann::ordered_json to_json(const PointSet& ps) {
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto p = ps.point(i);
        pts.push_back(std::vector<double>(p.begin(), p.end()));
    }
    nlohmann::ordered_json out;
    out["label"] = ps.label;
    out["seed"] = ps.seed;
    out["intensity"] = ps.intensity;
    out["window"] = {{"lows", ps.window.lows()}, {"highs", ps.window.highs()}, {"wrap", ps.window.wraps()}};
    out["count"] = ps.size();
    out["points"] = std::move(pts);
    return out;
}

}  // namespace abperc
