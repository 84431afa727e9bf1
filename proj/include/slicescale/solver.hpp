#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "slicescale/feasibility.hpp"
#include "slicescale/subspace.hpp"
#include "slicescale/tensor.hpp"

namespace slicescale {

/// Raised when the Newton iteration cannot proceed (Hessian solve failure
/// after the ridge fallback, on an instance the LP declares feasible).
class SolverFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolverOptions {
    double residual_tol = 1e-10;
    int max_iters = 100;
    double armijo_c = 1e-4;
    double backtrack_factor = 0.5;
    double hessian_ridge = 0.0;  // 0 = rely on the scaled fallback ridge
    double divergence_norm_cap = 1e3;
    double exponent_cap = 700.0;
    /// When set, the Newton start point is drawn from this seed instead of 0.
    std::optional<std::uint64_t> start_seed;
};

enum class SolveStatus { Converged, Diverged, MaxItersExceeded };

struct TraceRow {
    int iteration;
    double objective;
    double residual;
    double step_length;
};

struct ScalingResult {
    ScalingVectors scaling;
    /// Present iff Converged; equals apply_scaling(B, scaling).
    std::optional<SparseTensor> scaled_tensor;
    double residual = 0.0;
    int iterations = 0;
    std::vector<TraceRow> trace;
    SolveStatus status = SolveStatus::MaxItersExceeded;
    /// LP certificate attached when divergence is confirmed infeasible.
    std::optional<ScalingVectors> certificate;
};

/// f(y) = sum over support of b * exp(x_{1,i1}+...+x_{d,id}), computed with
/// a max-shift so large exponents cannot silently overflow. May return +inf
/// for points beyond double range; rejects NaN input.
double objective(const SparseTensor& b, const ScalingVectors& y,
                 double exponent_cap = 700.0);

/// Gradient and Hessian of f restricted to Vperp, at Vperp-coordinates c.
/// The ambient gradient is the vector of slice sums of the scaled tensor;
/// both are pulled back through basis_Vperp.
std::pair<std::vector<double>, Matrix> gradient_hessian_reduced(
    const SparseTensor& b, const TargetSums& s, const SubspaceFrame& frame,
    const std::vector<double>& c, double exponent_cap = 700.0);

/// Newton step: solves h step = -g by Cholesky, retrying once with a ridge
/// of 1e-12 * trace(h)/p on failure. Throws SolverFailure if both fail.
std::vector<double> solve_kkt_step(const Matrix& h, const std::vector<double>& g);

/// Scales b to the prescribed slice sums by Newton minimization of the
/// Lagrangian f - s^T y over Vperp, with Armijo backtracking. Declares
/// Diverged (with LP-confirmed certificate) when iterates blow up on an
/// infeasible instance.
ScalingResult newton_scale(const SparseTensor& b, const TargetSums& s,
                           const SolverOptions& opts = {});

}  // namespace slicescale
