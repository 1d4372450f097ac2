#pragma once

namespace abperc {

/// Selects the OpenMP kernel or the single-threaded reference path.
/// Both produce identical results; the reductions involved are exact.
enum class Execution { serial, parallel };

}  // namespace abperc
