#include "slicescale/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "slicescale/rng.hpp"

namespace slicescale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> exponent_sums(const SparseTensor& b, const std::vector<double>& y,
                                  const ModeLayout& lay) {
    std::vector<double> sums(b.nnz());
    for (std::size_t e = 0; e < b.nnz(); ++e) {
        double s = 0.0;
        for (int k = 0; k < b.num_modes(); ++k)
            s += y[lay.pos(k, b.entries()[e].idx[k])];
        sums[e] = s;
    }
    return sums;
}

// Entry values of the scaled tensor. Underflow to zero is fine here (it
// only shrinks gradient contributions); overflow past the cap is not.
std::vector<double> scaled_values(const SparseTensor& b, const std::vector<double>& sums,
                                  double cap) {
    std::vector<double> v(b.nnz());
    for (std::size_t e = 0; e < b.nnz(); ++e) {
        if (sums[e] > cap) throw std::overflow_error("scaled entry overflows exponent cap");
        v[e] = b.entries()[e].value * std::exp(sums[e]);
    }
    return v;
}

TargetSums scale_targets(const TargetSums& s, double factor) {
    TargetSums out = s;
    for (auto& sk : out.sums)
        for (double& v : sk) v *= factor;
    return out;
}

}  // namespace

double objective(const SparseTensor& b, const ScalingVectors& y, double exponent_cap) {
    std::vector<double> flat = y.stacked();
    for (double v : flat)
        if (std::isnan(v)) throw std::invalid_argument("objective: NaN in scaling vector");
    ModeLayout lay(b.dims());
    std::vector<double> sums = exponent_sums(b, flat, lay);
    double m = *std::max_element(sums.begin(), sums.end());
    if (m > exponent_cap / 2.0) {
        double acc = 0.0;
        for (std::size_t e = 0; e < b.nnz(); ++e)
            acc += b.entries()[e].value * std::exp(sums[e] - m);
        return std::exp(m) * acc;  // +inf when truly beyond double range
    }
    double acc = 0.0;
    for (std::size_t e = 0; e < b.nnz(); ++e)
        acc += b.entries()[e].value * std::exp(sums[e]);
    return acc;
}

std::pair<std::vector<double>, Matrix> gradient_hessian_reduced(
    const SparseTensor& b, const TargetSums& s, const SubspaceFrame& frame,
    const std::vector<double>& c, double exponent_cap) {
    (void)s;
    const int p = frame.dim_Vperp();
    std::vector<double> y = embed(frame, c, Basis::Vperp);
    std::vector<double> sums = exponent_sums(b, y, frame.layout);
    std::vector<double> vals = scaled_values(b, sums, exponent_cap);

    std::vector<double> grad(p, 0.0);
    Matrix hess(p, p);
    std::vector<double> w(p);
    for (std::size_t e = 0; e < b.nnz(); ++e) {
        // w = basis_Vperp^T (incidence vector of this entry's tuple)
        std::fill(w.begin(), w.end(), 0.0);
        for (int k = 0; k < b.num_modes(); ++k) {
            int row = frame.layout.pos(k, b.entries()[e].idx[k]);
            for (int j = 0; j < p; ++j) w[j] += frame.basis_Vperp(row, j);
        }
        double a = vals[e];
        for (int i = 0; i < p; ++i) {
            grad[i] += a * w[i];
            for (int j = 0; j <= i; ++j) hess(i, j) += a * w[i] * w[j];
        }
    }
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) hess(i, j) = hess(j, i);
    return {std::move(grad), std::move(hess)};
}

std::vector<double> solve_kkt_step(const Matrix& h, const std::vector<double>& g) {
    const int p = h.rows();
    std::vector<double> rhs(p);
    for (int i = 0; i < p; ++i) rhs[i] = -g[i];
    std::vector<double> step;
    if (cholesky_solve(h, rhs, step)) return step;
    double trace = 0.0;
    for (int i = 0; i < p; ++i) trace += h(i, i);
    Matrix ridged = h;
    double mu = 1e-12 * trace / std::max(1, p);
    for (int i = 0; i < p; ++i) ridged(i, i) += mu;
    if (cholesky_solve(ridged, rhs, step)) return step;
    throw SolverFailure("solve_kkt_step: factorization failed after ridge retry");
}

ScalingResult newton_scale(const SparseTensor& b, const TargetSums& s,
                           const SolverOptions& opts) {
    if (!validate_no_zero_slice(b).empty())
        throw std::invalid_argument("newton_scale: tensor has a zero slice");
    if (!check_compatibility(s).ok)
        throw std::invalid_argument("newton_scale: incompatible target sums");

    SubspaceFrame frame = build_frame(b, s);
    const int p = frame.dim_Vperp();
    const double cap = opts.exponent_cap;

    // Pre-normalize targets so the common total matches the tensor mass;
    // the inverse shift is folded back into the output scaling.
    const double sigma = b.total() / s.total();
    const double log_sigma = std::log(sigma);
    TargetSums sn = scale_targets(s, sigma);
    std::vector<double> target_stacked = stacked_targets(sn);
    std::vector<double> target_red = project_to(frame, target_stacked, Basis::Vperp);

    std::vector<double> c(p, 0.0);
    if (opts.start_seed) {
        SplitMix64 rng(*opts.start_seed);
        for (double& v : c) v = rng.uniform(-0.5, 0.5);
    }

    auto lagrangian = [&](const std::vector<double>& coords) {
        std::vector<double> y = embed(frame, coords, Basis::Vperp);
        double f = objective(b, ScalingVectors::from_stacked(b.dims(), y), cap);
        return f - dot(target_stacked, y);
    };

    ScalingResult res;
    double best_residual = kInf;
    int stalled = 0;
    bool lp_cleared = false;  // LP already said Feasible once

    auto finish_diverged = [&](const std::vector<double>& y) -> bool {
        FeasibilityReport rep = check_scalability(b, s);
        if (rep.verdict == Verdict::Feasible) {
            lp_cleared = true;
            stalled = 0;
            return false;
        }
        res.status = SolveStatus::Diverged;
        res.certificate = rep.certificate;
        res.scaling = ScalingVectors::from_stacked(b.dims(), y);
        return true;
    };

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        res.iterations = iter;
        std::vector<double> y = embed(frame, c, Basis::Vperp);
        std::vector<double> grad_f;
        Matrix hess(0, 0);
        std::vector<double> vals;
        try {
            std::tie(grad_f, hess) = gradient_hessian_reduced(b, s, frame, c, cap);
            std::vector<double> sums = exponent_sums(b, y, frame.layout);
            vals = scaled_values(b, sums, cap);
        } catch (const std::overflow_error&) {
            // Exponents past the cap mean the iterates are running off to
            // infinity; confirm with the LP before declaring divergence.
            if (!lp_cleared && finish_diverged(y)) return res;
            throw SolverFailure("newton_scale: exponent overflow on a feasible instance");
        }
        double mass = 0.0;
        for (double v : vals) mass += v;
        double lambda = mass / sn.total();

        // Residual of the lambda-normalized iterate against the targets.
        double rel = 0.0;
        if (!(mass > 0.0)) {
            rel = kInf;  // the whole iterate underflowed; clearly not converged
        } else {
            SparseTensor a_cur(b.dims(), [&] {
                std::vector<Entry> es;
                es.reserve(b.nnz());
                for (std::size_t e = 0; e < b.nnz(); ++e)
                    if (vals[e] > 0.0) es.push_back({b.entries()[e].idx, vals[e]});
                return es;
            }());
            for (int k = 0; k < b.num_modes(); ++k) {
                auto ss = slice_sums(a_cur, k);
                // Slices whose entries all underflowed read as zero sums.
                std::vector<double> full(b.dims()[k], 0.0);
                for (std::size_t i = 0; i < ss.size(); ++i) full[i] = ss[i];
                for (int i = 0; i < b.dims()[k]; ++i)
                    rel = std::max(rel, std::abs(full[i] / lambda - sn.sums[k][i]) /
                                            sn.sums[k][i]);
            }
        }

        double fval = objective(b, ScalingVectors::from_stacked(b.dims(), y), cap);
        res.trace.push_back({iter, fval, rel, 0.0});
        res.residual = rel;

        if (rel <= opts.residual_tol) {
            // Fix the multiplier by a constant mode-1 shift (lambda), then
            // undo the target normalization (sigma).
            for (int k = 0; k < b.num_modes(); ++k) {
                double lam_k = mass / sn.mode_total(k);
                if (std::abs(lam_k - lambda) > 1e-9 * std::abs(lambda))
                    throw SolverFailure("newton_scale: mode multipliers disagree");
            }
            std::vector<double> shifted = y;
            for (int i = 0; i < b.dims()[0]; ++i)
                shifted[frame.layout.pos(0, i)] -= std::log(lambda) + log_sigma;
            res.scaling = ScalingVectors::from_stacked(b.dims(), shifted);
            res.scaled_tensor = apply_scaling(b, res.scaling, cap);
            res.residual = residual(*res.scaled_tensor, s);
            res.status = SolveStatus::Converged;
            res.iterations = iter;
            return res;
        }

        if (rel < best_residual * (1.0 - 1e-6)) {
            best_residual = rel;
            stalled = 0;
        } else {
            ++stalled;
        }
        if (!lp_cleared && norm2(y) > opts.divergence_norm_cap && stalled >= 5) {
            if (finish_diverged(y)) return res;
        }

        // Lagrangian Newton step with Armijo backtracking.
        std::vector<double> grad_l(p);
        for (int i = 0; i < p; ++i) grad_l[i] = grad_f[i] - target_red[i];
        if (opts.hessian_ridge > 0.0)
            for (int i = 0; i < p; ++i) hess(i, i) += opts.hessian_ridge;
        std::vector<double> step;
        try {
            step = solve_kkt_step(hess, grad_l);
        } catch (const SolverFailure&) {
            // A collapsed Hessian far from the origin is itself a blow-up
            // signal; let the LP settle it.
            if (!lp_cleared && finish_diverged(y)) return res;
            throw;
        }

        double slope = dot(grad_l, step);
        double phi0 = lagrangian(c);
        double t = 1.0;
        std::vector<double> trial(p);
        // Near the minimum the predicted decrease drops below double
        // rounding on phi0; the slack keeps such steps from being rejected.
        double phi_slack = 1e-14 * std::abs(phi0);
        while (true) {
            for (int i = 0; i < p; ++i) trial[i] = c[i] + t * step[i];
            double phi = lagrangian(trial);
            if (phi <= phi0 + opts.armijo_c * t * slope + phi_slack) break;
            t *= opts.backtrack_factor;
            if (t < 1e-16) { t = 0.0; break; }
        }
        if (t == 0.0) {
            ++stalled;
        } else {
            c = trial;
        }
        res.trace.back().step_length = t;
    }

    res.iterations = opts.max_iters;
    std::vector<double> y = embed(frame, c, Basis::Vperp);
    res.scaling = ScalingVectors::from_stacked(b.dims(), y);
    // Out of iterations without meeting the tolerance: let the LP decide
    // whether this is a genuinely infeasible instance (residual bounded
    // away from zero) or just a slow solve.
    if (!lp_cleared && finish_diverged(y)) return res;
    res.status = SolveStatus::MaxItersExceeded;
    return res;
}

}  // namespace slicescale
