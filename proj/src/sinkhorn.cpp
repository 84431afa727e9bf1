#include "slicescale/sinkhorn.hpp"

#include <cmath>
#include <stdexcept>

namespace slicescale {

ScalingResult sinkhorn_scale(const SparseTensor& b, const TargetSums& s,
                             const SolverOptions& opts) {
    if (!validate_no_zero_slice(b).empty())
        throw std::invalid_argument("sinkhorn_scale: tensor has a zero slice");
    if (!check_compatibility(s).ok)
        throw std::invalid_argument("sinkhorn_scale: incompatible target sums");

    const int d = b.num_modes();
    const double sigma = b.total() / s.total();
    const double log_sigma = std::log(sigma);
    TargetSums sn = s;
    for (auto& sk : sn.sums)
        for (double& v : sk) v *= sigma;

    ScalingVectors x = ScalingVectors::zeros(b.dims());
    std::vector<double> cur(b.nnz());
    for (std::size_t e = 0; e < b.nnz(); ++e) cur[e] = b.entries()[e].value;

    ScalingResult res;
    res.scaling = x;

    for (int sweep = 0; sweep < opts.max_iters; ++sweep) {
        bool blew_up = false;
        for (int k = 0; k < d && !blew_up; ++k) {
            std::vector<double> ss(b.dims()[k], 0.0);
            for (std::size_t e = 0; e < b.nnz(); ++e) ss[b.entries()[e].idx[k]] += cur[e];
            std::vector<double> factor(b.dims()[k]);
            for (int i = 0; i < b.dims()[k]; ++i) {
                if (!(ss[i] > 0.0)) {
                    // A whole slice underflowed to zero: the factors have
                    // blown up past double range, same signal as the cap.
                    blew_up = true;
                    break;
                }
                factor[i] = sn.sums[k][i] / ss[i];
                x.modes[k][i] += std::log(factor[i]);
            }
            if (blew_up) break;
            for (std::size_t e = 0; e < b.nnz(); ++e) cur[e] *= factor[b.entries()[e].idx[k]];
        }
        if (blew_up) {
            res.scaling = x;
            res.status = SolveStatus::Diverged;
            FeasibilityReport rep = check_scalability(b, s);
            if (rep.verdict == Verdict::Infeasible) res.certificate = rep.certificate;
            return res;
        }

        // Residual of the current values against the normalized targets,
        // computed without materializing a tensor (entries may underflow).
        double rel = 0.0;
        double fval = 0.0;
        for (int k = 0; k < d; ++k) {
            std::vector<double> ss(b.dims()[k], 0.0);
            for (std::size_t e = 0; e < b.nnz(); ++e) ss[b.entries()[e].idx[k]] += cur[e];
            for (int i = 0; i < b.dims()[k]; ++i)
                rel = std::max(rel, std::abs(ss[i] - sn.sums[k][i]) / sn.sums[k][i]);
        }
        for (double v : cur) fval += v;
        res.trace.push_back({sweep, fval, rel, 1.0});
        res.residual = rel;
        res.iterations = sweep + 1;

        double max_exp = 0.0;
        for (const auto& xk : x.modes)
            for (double v : xk) max_exp = std::max(max_exp, std::abs(v));

        if (rel <= opts.residual_tol) {
            ScalingVectors out = x;
            for (double& v : out.modes[0]) v -= log_sigma;
            res.scaling = out;
            res.scaled_tensor = apply_scaling(b, out, opts.exponent_cap);
            res.residual = residual(*res.scaled_tensor, s);
            res.status = SolveStatus::Converged;
            return res;
        }
        if (max_exp > opts.exponent_cap) {
            // Factors blowing up: infeasible per the LP; attach its certificate.
            res.scaling = x;
            res.status = SolveStatus::Diverged;
            FeasibilityReport rep = check_scalability(b, s);
            if (rep.verdict == Verdict::Infeasible) res.certificate = rep.certificate;
            return res;
        }
    }

    res.scaling = x;
    res.status = SolveStatus::MaxItersExceeded;
    return res;
}

}  // namespace slicescale
