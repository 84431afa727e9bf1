#include "slicescale/feasibility.hpp"

#include <cmath>
#include <stdexcept>

#include "slicescale/maxflow.hpp"
#include "slicescale/simplex.hpp"

namespace slicescale {

namespace {

std::vector<double> support_sums(const SparseTensor& b, const ScalingVectors& y) {
    std::vector<double> out;
    out.reserve(b.nnz());
    for (const Entry& e : b.entries()) {
        double sum = 0.0;
        for (int k = 0; k < b.num_modes(); ++k) sum += y.modes[k][e.idx[k]];
        out.push_back(sum);
    }
    return out;
}

}  // namespace

double total_support_sum(const SparseTensor& b, const ScalingVectors& y) {
    double t = 0.0;
    for (double s : support_sums(b, y)) t += s;
    return t;
}

FeasibilityReport check_scalability(const SparseTensor& b, const TargetSums& s) {
    SubspaceFrame frame = build_frame(b, s);  // validates preconditions
    const int n = frame.n();
    const int u = frame.dim_U();
    const int nnz = static_cast<int>(b.nnz());
    const ModeLayout& lay = frame.layout;

    if (u == 0) return {Verdict::Feasible, std::nullopt, 0.0};

    // Constraint rows in U-coordinates: support rows (sum <= 0), then the
    // unit box on every ambient coordinate, two rows each.
    Matrix rows(nnz + 2 * n, u);
    std::vector<double> rhs(nnz + 2 * n, 0.0);
    for (int e = 0; e < nnz; ++e)
        for (int j = 0; j < u; ++j) {
            double v = 0.0;
            for (int k = 0; k < b.num_modes(); ++k)
                v += frame.basis_U(lay.pos(k, b.entries()[e].idx[k]), j);
            rows(e, j) = v;
        }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < u; ++j) {
            rows(nnz + 2 * i, j) = frame.basis_U(i, j);
            rows(nnz + 2 * i + 1, j) = -frame.basis_U(i, j);
        }
        rhs[nnz + 2 * i] = 1.0;
        rhs[nnz + 2 * i + 1] = 1.0;
    }

    // Objective: total support sum, pulled back through basis_U.
    std::vector<double> weight(n, 0.0);
    for (const Entry& e : b.entries())
        for (int k = 0; k < b.num_modes(); ++k) weight[lay.pos(k, e.idx[k])] += 1.0;
    std::vector<double> obj_u = matvec_transposed(frame.basis_U, weight);

    // Free U-coordinates split as c = p - q with p, q >= 0.
    Matrix a(rows.rows(), 2 * u);
    for (int i = 0; i < rows.rows(); ++i)
        for (int j = 0; j < u; ++j) {
            a(i, j) = rows(i, j);
            a(i, u + j) = -rows(i, j);
        }
    std::vector<double> cost(2 * u);
    for (int j = 0; j < u; ++j) {
        cost[j] = obj_u[j];
        cost[u + j] = -obj_u[j];
    }

    LpSolution sol = simplex_minimize(a, rhs, cost);
    if (sol.objective >= -1e-6) return {Verdict::Feasible, std::nullopt, 0.0};

    std::vector<double> coords(u);
    for (int j = 0; j < u; ++j) coords[j] = sol.x[j] - sol.x[u + j];
    std::vector<double> y = embed(frame, coords, Basis::U);
    double scale = norm_inf(y);
    for (double& v : y) v /= scale;
    ScalingVectors cert = ScalingVectors::from_stacked(b.dims(), y);
    if (!verify_certificate(b, s, cert))
        throw std::runtime_error("check_scalability: LP certificate failed verification");
    return {Verdict::Infeasible, cert, total_support_sum(b, cert)};
}

bool pattern_feasible_maxflow(const SparseTensor& pattern, const TargetSums& s,
                              double lower_bound_frac) {
    if (pattern.num_modes() != 2)
        throw std::invalid_argument("pattern_feasible_maxflow: requires d = 2");
    if (!check_compatibility(s).ok)
        throw std::invalid_argument("pattern_feasible_maxflow: incompatible sums");

    const int m1 = pattern.dims()[0], m2 = pattern.dims()[1];
    const double total = s.mode_total(0);
    const double eps = lower_bound_frac * total;

    // Lower bound eps on every support edge, folded into the node demands.
    std::vector<double> row_cap(s.sums[0]), col_cap(s.sums[1]);
    for (const Entry& e : pattern.entries()) {
        row_cap[e.idx[0]] -= eps;
        col_cap[e.idx[1]] -= eps;
    }
    for (int i = 0; i < m1; ++i)
        if (row_cap[i] < 0.0) return false;
    for (int j = 0; j < m2; ++j)
        if (col_cap[j] < 0.0) return false;

    const int source = 0, sink = m1 + m2 + 1;
    MaxFlow net(m1 + m2 + 2);
    for (int i = 0; i < m1; ++i) net.add_edge(source, 1 + i, row_cap[i]);
    for (int j = 0; j < m2; ++j) net.add_edge(1 + m1 + j, sink, col_cap[j]);
    for (const Entry& e : pattern.entries())
        net.add_edge(1 + e.idx[0], 1 + m1 + e.idx[1], total);

    double need = total - eps * static_cast<double>(pattern.nnz());
    return net.run(source, sink) >= need - 1e-9 * total;
}

bool verify_certificate(const SparseTensor& b, const TargetSums& s,
                        const ScalingVectors& y) {
    if (static_cast<int>(y.modes.size()) != b.num_modes()) return false;
    for (int k = 0; k < b.num_modes(); ++k)
        if (static_cast<int>(y.modes[k].size()) != b.dims()[k]) return false;

    double min_sum = 0.0;
    for (double sum : support_sums(b, y)) {
        if (sum > 1e-9) return false;
        min_sum = std::min(min_sum, sum);
    }
    if (!(min_sum < -1e-6)) return false;
    for (int k = 0; k < b.num_modes(); ++k) {
        double dp = dot(s.sums[k], y.modes[k]);
        double bound = 1e-9 * norm2(s.sums[k]) * norm2(y.modes[k]);
        if (std::abs(dp) > bound) return false;
    }
    return true;
}

}  // namespace slicescale
