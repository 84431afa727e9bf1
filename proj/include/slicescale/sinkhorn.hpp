#pragma once

#include "slicescale/solver.hpp"

namespace slicescale {

/// Generalized Sinkhorn / iterative proportional fitting: cyclically
/// rescales each mode's slices to the targets, accumulating the factors in
/// the log domain. Linearly convergent baseline for newton_scale.
ScalingResult sinkhorn_scale(const SparseTensor& b, const TargetSums& s,
                             const SolverOptions& opts = {});

}  // namespace slicescale
