#include "slicescale/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace slicescale {

namespace {

const Matrix& pick(const SubspaceFrame& f, Basis which) {
    switch (which) {
        case Basis::U: return f.basis_U;
        case Basis::V: return f.basis_V;
        default: return f.basis_Vperp;
    }
}

}  // namespace

SubspaceFrame build_frame(const SparseTensor& b, const TargetSums& s) {
    if (!validate_no_zero_slice(b).empty())
        throw std::invalid_argument("build_frame: tensor has a zero slice");
    if (!check_compatibility(s).ok)
        throw std::invalid_argument("build_frame: incompatible target sums");

    const int d = b.num_modes();
    ModeLayout layout(b.dims());
    const int n = layout.n;
    const int nnz = static_cast<int>(b.nnz());

    // Row k carries s_k in block k; U is its nullspace.
    Matrix eq(d, n);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < b.dims()[k]; ++i) eq(k, layout.pos(k, i)) = s.sums[k][i];
    Matrix basis_U = nullspace_basis(eq);

    // One incidence row per support tuple, stacked under the equality rows.
    Matrix stacked(d + nnz, n);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < b.dims()[k]; ++i) stacked(k, layout.pos(k, i)) = s.sums[k][i];
    for (int e = 0; e < nnz; ++e)
        for (int k = 0; k < d; ++k)
            stacked(d + e, layout.pos(k, b.entries()[e].idx[k])) = 1.0;
    Matrix basis_V = nullspace_basis(stacked);

    // Vperp: U columns with their V components removed, re-orthonormalized.
    Matrix residue(n, basis_U.cols());
    for (int j = 0; j < basis_U.cols(); ++j) {
        std::vector<double> u = basis_U.col(j);
        for (int q = 0; q < basis_V.cols(); ++q) {
            std::vector<double> v = basis_V.col(q);
            double c = dot(v, u);
            for (int i = 0; i < n; ++i) u[i] -= c * v[i];
        }
        residue.set_col(j, u);
    }
    Matrix basis_Vperp = orthonormalize(residue);

    SubspaceFrame frame{b.dims(), layout, {}, std::move(basis_U), std::move(basis_V),
                        std::move(basis_Vperp)};
    frame.support.reserve(b.nnz());
    for (const Entry& e : b.entries()) frame.support.push_back(e.idx);
    return frame;
}

std::vector<double> project_to(const SubspaceFrame& frame, const std::vector<double>& y,
                               Basis which) {
    if (static_cast<int>(y.size()) != frame.n())
        throw std::invalid_argument("project_to: length mismatch");
    return matvec_transposed(pick(frame, which), y);
}

std::vector<double> embed(const SubspaceFrame& frame, const std::vector<double>& coords,
                          Basis which) {
    const Matrix& m = pick(frame, which);
    if (static_cast<int>(coords.size()) != m.cols())
        throw std::invalid_argument("embed: length mismatch");
    return matvec(m, coords);
}

double max_support_sum(const SparseTensor& b, const ScalingVectors& y) {
    if (b.nnz() == 0) throw std::invalid_argument("max_support_sum: empty support");
    if (static_cast<int>(y.modes.size()) != b.num_modes())
        throw std::invalid_argument("max_support_sum: mode count mismatch");
    double best = -std::numeric_limits<double>::infinity();
    for (const Entry& e : b.entries()) {
        double sum = 0.0;
        for (int k = 0; k < b.num_modes(); ++k) sum += y.modes[k][e.idx[k]];
        best = std::max(best, sum);
    }
    return best;
}

}  // namespace slicescale
