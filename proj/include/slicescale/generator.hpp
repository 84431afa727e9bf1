#pragma once

#include <cstdint>
#include <utility>

#include "slicescale/rng.hpp"
#include "slicescale/tensor.hpp"

namespace slicescale {

struct Instance {
    SparseTensor tensor;
    TargetSums targets;
};

/// Samples a support pattern at the given density, draws a positive tensor
/// on it whose slice sums become the targets, then redraws the values.
/// The pair is scalable by construction. Deterministic in the seed.
/// value_spread widens the entry range [1-spread/2, 1+spread/2].
Instance generate_feasible(const std::vector<int>& dims, double density,
                           std::uint64_t seed, double value_spread = 1.0);

/// d=2 instances rejected by the max-flow oracle (no zero row/column).
/// Falls back to a fixed infeasible family if sampling never rejects.
Instance generate_infeasible_2mode(int size, std::uint64_t seed);

}  // namespace slicescale
