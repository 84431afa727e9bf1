#pragma once

#include <stdexcept>
#include <vector>

#include "slicescale/linalg.hpp"

namespace slicescale {

/// Raised when the simplex hits its pivot cap or meets an unbounded
/// direction; operational failure, never a verdict.
class SimplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LpSolution {
    std::vector<double> x;
    double objective;
};

/// Minimizes c^T x subject to A x <= b, x >= 0, by a dense tableau
/// simplex with Bland's anti-cycling rule. Requires b >= 0 so the
/// all-slack basis is feasible (the callers construct such LPs).
LpSolution simplex_minimize(const Matrix& a, const std::vector<double>& b,
                            const std::vector<double>& c, int max_pivots = 10000);

}  // namespace slicescale
