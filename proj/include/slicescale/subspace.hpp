#pragma once

#include <vector>

#include "slicescale/linalg.hpp"
#include "slicescale/tensor.hpp"

namespace slicescale {

/// Orthonormal bases for the constraint subspace U (target-orthogonal
/// directions), its subspace V (directions with vanishing support sums,
/// along which the objective is constant), and the complement Vperp of V
/// inside U — the strictly convex reduced search space.
struct SubspaceFrame {
    std::vector<int> dims;
    ModeLayout layout;
    std::vector<std::vector<int>> support;  // index tuples of B, sorted
    Matrix basis_U;                         // n x u
    Matrix basis_V;                         // n x v
    Matrix basis_Vperp;                     // n x p, p = u - v

    int n() const { return layout.n; }
    int dim_U() const { return basis_U.cols(); }
    int dim_V() const { return basis_V.cols(); }
    int dim_Vperp() const { return basis_Vperp.cols(); }
};

enum class Basis { U, V, Vperp };

SubspaceFrame build_frame(const SparseTensor& b, const TargetSums& s);

/// Coordinates of y in the selected basis (basis^T y).
std::vector<double> project_to(const SubspaceFrame& frame, const std::vector<double>& y,
                               Basis which);
/// basis * coords; right inverse of project_to on the span.
std::vector<double> embed(const SubspaceFrame& frame, const std::vector<double>& coords,
                          Basis which);

/// Max over support tuples of x_{1,i1}+...+x_{d,id}. Throws on empty support.
double max_support_sum(const SparseTensor& b, const ScalingVectors& y);

}  // namespace slicescale
