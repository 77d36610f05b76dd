#pragma once

#include <functional>

namespace formlab {

enum class ExecMode { serial, parallel };

/// Runs fn(i) for i in [0, n). Parallel mode spreads iterations across
/// OpenMP threads; callers must write outputs to disjoint slots so the
/// two modes stay byte-identical. The first exception thrown by any
/// iteration is rethrown on the calling thread.
void for_each_index(int n, ExecMode mode, const std::function<void(int)>& fn);

} // namespace formlab
