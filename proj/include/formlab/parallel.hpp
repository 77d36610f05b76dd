#pragma once

#include "formlab/forms.hpp"
#include "formlab/report.hpp"
#include "formlab/sweep.hpp"

namespace formlab {

struct ParallelReport {
    std::string surface;
    std::vector<IdentityRow> rows;
    bool all_pass = false; // over gating rows only
};

/// Checks the offset-surface relations over a grid of the base domain:
/// the Gauss and mean curvature transformations, the shared third form
/// and normal, the Weingarten equations on both surfaces, and the
/// cross-product density 1 - 2 mu H + mu^2 K.
///
/// Two extra diagnostic rows record the competing predictions
/// R* = R - 2 mu (what the curvature transformations imply) and
/// R* = R - mu (a printed variant); they never gate all_pass.
ParallelReport parallel_invariant_check(const SurfacePatch& base, double mu,
                                        const Grid& grid,
                                        ExecMode mode = ExecMode::parallel);

} // namespace formlab
