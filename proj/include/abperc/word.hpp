#pragma once

#include <cstdint>
#include <vector>

#include "abperc/pointprocess.hpp"

namespace abperc {

/// One step of a realised word: point `index` of process `symbol`.
struct WordStep {
    int symbol = 0;
    std::uint32_t index = 0;
    bool operator==(const WordStep&) const = default;
};

/// Symbols are 0-based process indices.
std::vector<int> alternating_word(int k, std::size_t length);

/// Searches for distinct points X_1, X_2, ... with X_i from process w_i and
/// |X_i - X_{i+1}| <= r_{w_i} + r_{w_{i+1}}. Breadth-first over
/// (position, point) states, skipping points already on the current path.
/// Returns the longest prefix found; may fall short of the longest one
/// that exists.
std::vector<WordStep> find_word_occurrence(const std::vector<PointSet>& processes, const std::vector<double>& radii,
                                           const std::vector<int>& word);

/// Distance rule, process membership and distinctness of a realised prefix.
bool is_word_path(const std::vector<PointSet>& processes, const std::vector<double>& radii,
                  const std::vector<int>& word, const std::vector<WordStep>& path);

}  // namespace abperc
