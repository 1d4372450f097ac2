#include "abperc/word.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "abperc/spatial_index.hpp"

namespace abperc {

namespace {

void validate(const std::vector<PointSet>& processes, const std::vector<double>& radii, const std::vector<int>& word) {
    if (processes.size() != radii.size()) throw std::invalid_argument("word: one radius per process");
    for (double r : radii)
        if (!(r > 0.0)) throw std::invalid_argument("word: radii must be positive");
    for (int s : word)
        if (s < 0 || static_cast<std::size_t>(s) >= processes.size()) throw std::invalid_argument("word: symbol out of range");
}

struct Node {
    std::uint32_t point;
    std::int32_t parent;  // index into the node pool, -1 at the root
};

}  // namespace

std::vector<int> alternating_word(int k, std::size_t length) {
    if (k < 1) throw std::invalid_argument("alternating_word: need at least one symbol");
    std::vector<int> w(length);
    for (std::size_t i = 0; i < length; ++i) w[i] = static_cast<int>(i % static_cast<std::size_t>(k));
    return w;
}

std::vector<WordStep> find_word_occurrence(const std::vector<PointSet>& processes, const std::vector<double>& radii,
                                           const std::vector<int>& word) {
    validate(processes, radii, word);
    if (word.empty() || processes[word[0]].empty()) return {};
    const double max_r = *std::max_element(radii.begin(), radii.end());
    std::vector<SpatialIndex> index;
    index.reserve(processes.size());
    for (const auto& ps : processes) index.emplace_back(ps, 2.0 * max_r, Metric::euclidean());

    std::vector<Node> pool;
    std::vector<std::int32_t> layer;
    for (std::uint32_t p = 0; p < processes[word[0]].size(); ++p) {
        layer.push_back(static_cast<std::int32_t>(pool.size()));
        pool.push_back({p, -1});
    }
    // Each (position, point) state is expanded at most once.
    std::vector<std::int32_t> next;
    std::unordered_map<std::uint32_t, std::uint8_t> seen;
    std::size_t depth = 1;
    for (; depth < word.size(); ++depth) {
        const int from = word[depth - 1];
        const int to = word[depth];
        const double reach = radii[from] + radii[to];
        next.clear();
        seen.clear();
        for (auto node : layer) {
            // Only earlier positions holding the same symbol can repeat a point.
            std::vector<std::uint32_t> same_process;
            std::size_t pos = depth;
            for (auto k = node; k >= 0; k = pool[k].parent)
                if (word[--pos] == to) same_process.push_back(pool[k].point);
            index[to].for_each_within(processes[from].point(pool[node].point), reach, [&](std::uint32_t id, double) {
                if (seen.count(id)) return;
                if (std::find(same_process.begin(), same_process.end(), id) != same_process.end()) return;
                seen.emplace(id, 1);
                next.push_back(static_cast<std::int32_t>(pool.size()));
                pool.push_back({id, node});
            });
        }
        if (next.empty()) break;
        layer.swap(next);
    }
    std::vector<WordStep> out(depth);
    auto k = layer.front();
    for (std::size_t pos = depth; pos-- > 0; k = pool[k].parent) out[pos] = {word[pos], pool[k].point};
    return out;
}

bool is_word_path(const std::vector<PointSet>& processes, const std::vector<double>& radii,
                  const std::vector<int>& word, const std::vector<WordStep>& path) {
    validate(processes, radii, word);
    if (path.size() > word.size()) return false;
    const Metric metric = Metric::euclidean();
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (path[i].symbol != word[i]) return false;
        if (path[i].index >= processes[path[i].symbol].size()) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (path[j] == path[i]) return false;
        if (i == 0) continue;
        const auto& a = path[i - 1];
        const auto& b = path[i];
        const double reach = radii[a.symbol] + radii[b.symbol];
        if (metric.distance2(processes[a.symbol].point(a.index), processes[b.symbol].point(b.index)) > closed_radius2(reach))
            return false;
    }
    return true;
}

}  // namespace abperc
