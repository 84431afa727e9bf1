#include "slicescale/simplex.hpp"

#include <cmath>

namespace slicescale {

LpSolution simplex_minimize(const Matrix& a, const std::vector<double>& b,
                            const std::vector<double>& c, int max_pivots) {
    const int m = a.rows(), n = a.cols();
    if (static_cast<int>(b.size()) != m || static_cast<int>(c.size()) != n)
        throw std::invalid_argument("simplex_minimize: shape mismatch");
    for (double bi : b)
        if (bi < 0.0)
            throw std::invalid_argument("simplex_minimize: requires b >= 0");

    constexpr double eps = 1e-9;

    // Tableau: m constraint rows over [structural | slack | rhs], then the
    // objective row (maximize -c^T x so reduced costs follow the max form).
    Matrix t(m + 1, n + m + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t(i, j) = a(i, j);
        t(i, n + i) = 1.0;
        t(i, n + m) = b[i];
    }
    for (int j = 0; j < n; ++j) t(m, j) = c[j];

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    for (int pivots = 0;; ++pivots) {
        if (pivots >= max_pivots)
            throw SimplexError("simplex: pivot cap exceeded");

        // Bland: entering = lowest-index column with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < n + m; ++j)
            if (t(m, j) < -eps) { enter = j; break; }
        if (enter < 0) break;  // optimal

        // Ratio test; ties broken by lowest basis variable index.
        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            if (t(i, enter) <= eps) continue;
            double ratio = t(i, n + m) / t(i, enter);
            if (leave < 0 || ratio < best_ratio - eps ||
                (std::abs(ratio - best_ratio) <= eps && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0)
            throw SimplexError("simplex: unbounded direction");

        double piv = t(leave, enter);
        for (int j = 0; j <= n + m; ++j) t(leave, j) /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            double f = t(i, enter);
            if (f == 0.0) continue;
            for (int j = 0; j <= n + m; ++j) t(i, j) -= f * t(leave, j);
        }
        basis[leave] = enter;
    }

    LpSolution sol;
    sol.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) sol.x[basis[i]] = t(i, n + m);
    sol.objective = 0.0;
    for (int j = 0; j < n; ++j) sol.objective += c[j] * sol.x[j];
    return sol;
}

}  // namespace slicescale
