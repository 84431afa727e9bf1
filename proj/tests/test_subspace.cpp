#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "helpers.hpp"
#include "slicescale/solver.hpp"
#include "slicescale/subspace.hpp"

using namespace slicescale;
using slicescale::testing::all_ones;
using slicescale::testing::matrix;
using slicescale::testing::targets;

namespace {

// Independent rank oracle: plain row reduction with full comparisons.
int brute_force_rank(std::vector<std::vector<double>> rows) {
    int rank = 0;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t best = rank;
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (std::abs(rows[r][c]) > std::abs(rows[best][c])) best = r;
        if (std::abs(rows[best][c]) < 1e-9) continue;
        std::swap(rows[rank], rows[best]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == rank) continue;
            double f = rows[r][c] / rows[rank][c];
            for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

bool columns_orthonormal(const Matrix& q, double tol = 1e-10) {
    for (int i = 0; i < q.cols(); ++i)
        for (int j = 0; j <= i; ++j)
            if (std::abs(dot(q.col(i), q.col(j)) - (i == j ? 1.0 : 0.0)) > tol)
                return false;
    return true;
}

void check_frame_invariants(const SparseTensor& b, const TargetSums& s,
                            const SubspaceFrame& f) {
    CHECK(columns_orthonormal(f.basis_U));
    CHECK(columns_orthonormal(f.basis_V));
    CHECK(columns_orthonormal(f.basis_Vperp));
    CHECK(f.dim_U() == f.n() - b.num_modes());
    CHECK(f.dim_Vperp() == f.dim_U() - f.dim_V());

    // Every U column is orthogonal to the per-mode target vectors.
    for (int j = 0; j < f.dim_U(); ++j) {
        auto col = f.basis_U.col(j);
        for (int k = 0; k < b.num_modes(); ++k) {
            double dp = 0.0, snorm = 0.0;
            for (int i = 0; i < b.dims()[k]; ++i) {
                dp += s.sums[k][i] * col[f.layout.pos(k, i)];
                snorm += s.sums[k][i] * s.sums[k][i];
            }
            CHECK(std::abs(dp) <= 1e-10 * std::sqrt(snorm));
        }
    }
    // V columns additionally kill every support sum.
    for (int j = 0; j < f.dim_V(); ++j) {
        auto col = f.basis_V.col(j);
        for (const auto& tuple : f.support) {
            double sum = 0.0;
            for (int k = 0; k < b.num_modes(); ++k) sum += col[f.layout.pos(k, tuple[k])];
            CHECK(std::abs(sum) <= 1e-10);
        }
    }
    // Vperp lies in U and is orthogonal to V.
    for (int j = 0; j < f.dim_Vperp(); ++j) {
        auto col = f.basis_Vperp.col(j);
        auto u_coords = project_to(f, col, Basis::U);
        auto back = embed(f, u_coords, Basis::U);
        for (int i = 0; i < f.n(); ++i) CHECK(std::abs(back[i] - col[i]) <= 1e-10);
        for (int q = 0; q < f.dim_V(); ++q)
            CHECK(std::abs(dot(col, f.basis_V.col(q))) <= 1e-10);
    }
}

}  // namespace

TEST_CASE("full-support 2x2 frame: u=2, v=0, p=2") {
    SparseTensor b = matrix({{1, 1}, {1, 1}});
    TargetSums s = targets({{1, 1}, {1, 1}});
    SubspaceFrame f = build_frame(b, s);
    CHECK(f.dim_U() == 2);
    CHECK(f.dim_V() == 0);
    CHECK(f.dim_Vperp() == 2);
    check_frame_invariants(b, s, f);
}

TEST_CASE("diagonal-support 2x2 frame has a one-dimensional V") {
    SparseTensor b = matrix({{1, 0}, {0, 1}});
    TargetSums s = targets({{1, 1}, {1, 1}});
    SubspaceFrame f = build_frame(b, s);
    CHECK(f.dim_U() == 2);
    CHECK(f.dim_V() == 1);
    CHECK(f.dim_Vperp() == 1);
    check_frame_invariants(b, s, f);
    // V is spanned by x1=(t,-t), x2=(-t,t).
    auto v = f.basis_V.col(0);
    double t = v[0];
    CHECK(v[1] == doctest::Approx(-t).epsilon(1e-10));
    CHECK(v[2] == doctest::Approx(-t).epsilon(1e-10));
    CHECK(v[3] == doctest::Approx(t).epsilon(1e-10));
}

TEST_CASE("full-support 2x2x2 frame: u=3, v=0, via brute-force rank oracle") {
    SparseTensor b = all_ones({2, 2, 2});
    TargetSums s = targets({{4, 4}, {4, 4}, {4, 4}});
    SubspaceFrame f = build_frame(b, s);
    CHECK(f.dim_U() == 3);
    CHECK(f.dim_V() == 0);
    CHECK(f.dim_Vperp() == 3);
    check_frame_invariants(b, s, f);

    // Oracle: rank of the stacked equality + incidence system is n - dim V.
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < 3; ++k) {
        std::vector<double> r(6, 0.0);
        for (int i = 0; i < 2; ++i) r[f.layout.pos(k, i)] = s.sums[k][i];
        rows.push_back(r);
    }
    for (const auto& tuple : f.support) {
        std::vector<double> r(6, 0.0);
        for (int k = 0; k < 3; ++k) r[f.layout.pos(k, tuple[k])] = 1.0;
        rows.push_back(r);
    }
    CHECK(brute_force_rank(rows) == 6 - f.dim_V());
}

TEST_CASE("build_frame rejects bad inputs") {
    CHECK_THROWS_AS(build_frame(matrix({{1, 1}, {0, 0}}), targets({{1, 1}, {1, 1}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_frame(matrix({{1, 1}, {1, 1}}), targets({{1, 1}, {1, 2}})),
                    std::invalid_argument);
}

TEST_CASE("project/embed round trip and unit coordinates") {
    SplitMix64 rng(3);
    SparseTensor b = slicescale::testing::random_full_tensor({3, 4}, rng);
    TargetSums s = targets({slice_sums(b, 0), slice_sums(b, 1)});
    SubspaceFrame f = build_frame(b, s);

    std::vector<double> zero(f.n(), 0.0);
    CHECK(norm_inf(project_to(f, zero, Basis::U)) == 0.0);

    for (int j = 0; j < f.dim_U(); ++j) {
        auto coords = project_to(f, f.basis_U.col(j), Basis::U);
        for (int q = 0; q < f.dim_U(); ++q)
            CHECK(coords[q] == doctest::Approx(q == j ? 1.0 : 0.0).epsilon(1e-10));
    }

    // Round trip inside the span.
    std::vector<double> coords(f.dim_U());
    for (double& v : coords) v = rng.uniform(-1, 1);
    auto y = embed(f, coords, Basis::U);
    auto back = embed(f, project_to(f, y, Basis::U), Basis::U);
    for (int i = 0; i < f.n(); ++i) CHECK(std::abs(back[i] - y[i]) <= 1e-10);
}

TEST_CASE("max_support_sum") {
    SparseTensor full = matrix({{1, 1}, {1, 1}});
    CHECK(max_support_sum(full, ScalingVectors::zeros({2, 2})) == 0.0);
    CHECK(max_support_sum(full, ScalingVectors{{{1, -1}, {0, 0}}}) == 1.0);

    SparseTensor pat = matrix({{0, 1}, {1, 1}});
    CHECK(max_support_sum(pat, ScalingVectors{{{1, -1}, {0.5, -1.5}}}) ==
          doctest::Approx(-0.5));
}

TEST_CASE("frames are deterministic") {
    SplitMix64 rng(5);
    SparseTensor b = slicescale::testing::random_full_tensor({3, 3, 2}, rng);
    TargetSums s = targets({slice_sums(b, 0), slice_sums(b, 1), slice_sums(b, 2)});
    SubspaceFrame f1 = build_frame(b, s);
    SubspaceFrame f2 = build_frame(b, s);
    for (int i = 0; i < f1.n(); ++i)
        for (int j = 0; j < f1.dim_U(); ++j) CHECK(f1.basis_U(i, j) == f2.basis_U(i, j));
    for (int i = 0; i < f1.n(); ++i)
        for (int j = 0; j < f1.dim_Vperp(); ++j)
            CHECK(f1.basis_Vperp(i, j) == f2.basis_Vperp(i, j));
}

TEST_CASE("objective is constant along V") {
    SparseTensor b = matrix({{1, 0}, {0, 2}});
    TargetSums s = targets({{1, 2}, {1, 2}});
    SubspaceFrame f = build_frame(b, s);
    REQUIRE(f.dim_V() == 1);
    SplitMix64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> y(f.n());
        for (double& v : y) v = rng.uniform(-1, 1);
        double t = rng.uniform(-2, 2);
        std::vector<double> shifted = y;
        for (int i = 0; i < f.n(); ++i) shifted[i] += t * f.basis_V(i, 0);
        double fy = objective(b, ScalingVectors::from_stacked(b.dims(), y));
        double fs = objective(b, ScalingVectors::from_stacked(b.dims(), shifted));
        CHECK(std::abs(fs - fy) <= 1e-9 * fy);
    }
}
