#pragma once

#include <optional>

#include "slicescale/subspace.hpp"
#include "slicescale/tensor.hpp"

namespace slicescale {

enum class Verdict { Feasible, Infeasible };

struct FeasibilityReport {
    Verdict verdict;
    /// Present iff Infeasible: a direction y in U with every support sum
    /// <= 0 and strictly negative total, witnessing that no scaling exists.
    std::optional<ScalingVectors> certificate;
    /// Total support sum at the certificate (strictly negative when present).
    double objective_at_certificate = 0.0;
};

/// Decides scalability by the box-bounded LP over U-coordinates: minimize
/// the total support sum subject to all support sums <= 0 and the unit box.
/// A minimum below -1e-6 yields Infeasible with the minimizer as
/// certificate (renormalized to unit max-norm).
FeasibilityReport check_scalability(const SparseTensor& b, const TargetSums& s);

/// d=2 oracle: a strictly-positive-on-pattern matrix with the prescribed
/// row/column sums exists iff the bipartite transportation network with a
/// small lower bound on every support edge has a saturating flow.
bool pattern_feasible_maxflow(const SparseTensor& pattern, const TargetSums& s,
                              double lower_bound_frac = 1e-9);

/// True iff y satisfies the inequality system (all support sums <= 1e-9,
/// target orthogonality per mode) and at least one support sum < -1e-6.
bool verify_certificate(const SparseTensor& b, const TargetSums& s,
                        const ScalingVectors& y);

/// Total support sum of y over b's support.
double total_support_sum(const SparseTensor& b, const ScalingVectors& y);

}  // namespace slicescale
