#include "slicescale/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slicescale {

SparseTensor::SparseTensor(std::vector<int> dims, std::vector<Entry> entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
    if (dims_.empty())
        throw std::invalid_argument("tensor needs at least one mode");
    for (int m : dims_)
        if (m <= 0)
            throw std::invalid_argument("tensor dimensions must be positive");
    const int d = num_modes();
    for (const Entry& e : entries_) {
        if (static_cast<int>(e.idx.size()) != d)
            throw std::invalid_argument("entry index arity does not match mode count");
        for (int k = 0; k < d; ++k)
            if (e.idx[k] < 0 || e.idx[k] >= dims_[k])
                throw std::invalid_argument("entry index out of range");
        if (!(e.value > 0.0) || !std::isfinite(e.value))
            throw std::invalid_argument("entry values must be finite and strictly positive");
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.idx < b.idx; });
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i].idx == entries_[i - 1].idx)
            throw std::invalid_argument("duplicate entry index tuple");
}

double SparseTensor::total() const {
    double t = 0.0;
    for (const Entry& e : entries_) t += e.value;
    return t;
}

double TargetSums::mode_total(int k) const {
    return std::accumulate(sums[k].begin(), sums[k].end(), 0.0);
}

std::vector<double> ScalingVectors::stacked() const {
    std::vector<double> y;
    for (const auto& xk : modes) y.insert(y.end(), xk.begin(), xk.end());
    return y;
}

ScalingVectors ScalingVectors::from_stacked(const std::vector<int>& dims,
                                            const std::vector<double>& y) {
    std::size_t n = 0;
    for (int m : dims) n += static_cast<std::size_t>(m);
    if (y.size() != n)
        throw std::invalid_argument("stacked vector length does not match dims");
    ScalingVectors x;
    std::size_t at = 0;
    for (int m : dims) {
        x.modes.emplace_back(y.begin() + at, y.begin() + at + m);
        at += static_cast<std::size_t>(m);
    }
    return x;
}

ScalingVectors ScalingVectors::zeros(const std::vector<int>& dims) {
    ScalingVectors x;
    for (int m : dims) x.modes.emplace_back(m, 0.0);
    return x;
}

ModeLayout::ModeLayout(const std::vector<int>& dims) {
    offsets.resize(dims.size());
    int at = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        offsets[k] = at;
        at += dims[k];
    }
    n = at;
}

std::vector<double> slice_sums(const SparseTensor& t, int k) {
    if (k < 0 || k >= t.num_modes())
        throw std::invalid_argument("mode index out of range");
    std::vector<double> s(t.dims()[k], 0.0);
    for (const Entry& e : t.entries()) s[e.idx[k]] += e.value;
    return s;
}

std::vector<ZeroSlice> validate_no_zero_slice(const SparseTensor& t) {
    std::vector<ZeroSlice> bad;
    for (int k = 0; k < t.num_modes(); ++k) {
        std::vector<char> hit(t.dims()[k], 0);
        for (const Entry& e : t.entries()) hit[e.idx[k]] = 1;
        for (int i = 0; i < t.dims()[k]; ++i)
            if (!hit[i]) bad.push_back({k, i});
    }
    return bad;
}

CompatibilityReport check_compatibility(const TargetSums& s, double rel_tol) {
    for (const auto& sk : s.sums)
        for (double v : sk)
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument("target components must be finite and positive");
    double lo = s.mode_total(0), hi = lo;
    for (int k = 1; k < s.num_modes(); ++k) {
        double t = s.mode_total(k);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    return {hi - lo <= rel_tol * hi, lo, hi};
}

bool same_zero_pattern(const SparseTensor& a, const SparseTensor& b) {
    if (a.dims() != b.dims())
        throw std::invalid_argument("same_zero_pattern: dimension mismatch");
    if (a.nnz() != b.nnz()) return false;
    for (std::size_t i = 0; i < a.nnz(); ++i)
        if (a.entries()[i].idx != b.entries()[i].idx) return false;
    return true;
}

SparseTensor apply_scaling(const SparseTensor& b, const ScalingVectors& x,
                           double exponent_cap) {
    if (static_cast<int>(x.modes.size()) != b.num_modes())
        throw std::invalid_argument("apply_scaling: mode count mismatch");
    for (int k = 0; k < b.num_modes(); ++k)
        if (static_cast<int>(x.modes[k].size()) != b.dims()[k])
            throw std::invalid_argument("apply_scaling: mode length mismatch");
    std::vector<Entry> out;
    out.reserve(b.nnz());
    for (const Entry& e : b.entries()) {
        double expo = 0.0;
        for (int k = 0; k < b.num_modes(); ++k) expo += x.modes[k][e.idx[k]];
        if (std::abs(expo) > exponent_cap)
            throw std::overflow_error("apply_scaling: exponent sum exceeds cap");
        out.push_back({e.idx, e.value * std::exp(expo)});
    }
    return SparseTensor(b.dims(), std::move(out));
}

double residual(const SparseTensor& a, const TargetSums& s) {
    if (s.num_modes() != a.num_modes())
        throw std::invalid_argument("residual: mode count mismatch");
    double r = 0.0;
    for (int k = 0; k < a.num_modes(); ++k) {
        auto ss = slice_sums(a, k);
        if (ss.size() != s.sums[k].size())
            throw std::invalid_argument("residual: mode length mismatch");
        for (std::size_t i = 0; i < ss.size(); ++i)
            r = std::max(r, std::abs(ss[i] - s.sums[k][i]) / s.sums[k][i]);
    }
    return r;
}

std::vector<double> stacked_targets(const TargetSums& s) {
    std::vector<double> y;
    for (const auto& sk : s.sums) y.insert(y.end(), sk.begin(), sk.end());
    return y;
}

}  // namespace slicescale
