#include "slicescale/generator.hpp"

#include <stdexcept>

#include "slicescale/feasibility.hpp"

namespace slicescale {

namespace {

// Visits every index tuple of the dense grid in lexicographic order.
template <typename F>
void for_each_cell(const std::vector<int>& dims, F&& visit) {
    std::vector<int> idx(dims.size(), 0);
    for (;;) {
        visit(idx);
        int k = static_cast<int>(dims.size()) - 1;
        while (k >= 0 && ++idx[k] == dims[k]) idx[k--] = 0;
        if (k < 0) break;
    }
}

std::vector<std::vector<int>> sample_pattern(const std::vector<int>& dims, double density,
                                             SplitMix64& rng) {
    std::vector<std::vector<int>> pattern;
    for_each_cell(dims, [&](const std::vector<int>& idx) {
        if (density >= 1.0 || rng.next_double() < density) pattern.push_back(idx);
    });
    return pattern;
}

bool pattern_has_zero_slice(const std::vector<int>& dims,
                            const std::vector<std::vector<int>>& pattern) {
    for (std::size_t k = 0; k < dims.size(); ++k) {
        std::vector<char> hit(dims[k], 0);
        for (const auto& idx : pattern) hit[idx[k]] = 1;
        for (int i = 0; i < dims[k]; ++i)
            if (!hit[i]) return true;
    }
    return false;
}

SparseTensor tensor_on_pattern(const std::vector<int>& dims,
                               const std::vector<std::vector<int>>& pattern,
                               double lo, double hi, SplitMix64& rng) {
    std::vector<Entry> entries;
    entries.reserve(pattern.size());
    for (const auto& idx : pattern) entries.push_back({idx, rng.uniform(lo, hi)});
    return SparseTensor(dims, std::move(entries));
}

}  // namespace

Instance generate_feasible(const std::vector<int>& dims, double density,
                           std::uint64_t seed, double value_spread) {
    if (!(density > 0.0) || density > 1.0)
        throw std::invalid_argument("generate_feasible: density must be in (0, 1]");
    double cells = 1.0;
    for (int m : dims) cells *= m;
    if (cells > 1e7)
        throw std::invalid_argument("generate_feasible: grid too large");
    const double lo = 1.0 - value_spread / 2.0, hi = 1.0 + value_spread / 2.0;
    if (!(lo > 0.0))
        throw std::invalid_argument("generate_feasible: value spread too wide");

    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        auto pattern = sample_pattern(dims, density, rng);
        if (pattern.empty() || pattern_has_zero_slice(dims, pattern)) continue;
        SparseTensor witness = tensor_on_pattern(dims, pattern, lo, hi, rng);
        TargetSums s;
        for (std::size_t k = 0; k < dims.size(); ++k)
            s.sums.push_back(slice_sums(witness, static_cast<int>(k)));
        SparseTensor b = tensor_on_pattern(dims, pattern, lo, hi, rng);
        return {std::move(b), std::move(s)};
    }
    throw std::runtime_error("generate_feasible: no zero-slice-free pattern in 1000 tries");
}

Instance generate_infeasible_2mode(int size, std::uint64_t seed) {
    if (size < 2) throw std::invalid_argument("generate_infeasible_2mode: size >= 2");
    const std::vector<int> dims{size, size};
    SplitMix64 rng(seed);

    for (int attempt = 0; attempt < 10000; ++attempt) {
        auto pattern = sample_pattern(dims, 0.55, rng);
        if (pattern.empty() || pattern_has_zero_slice(dims, pattern)) continue;
        TargetSums s;
        s.sums.emplace_back();
        for (int i = 0; i < size; ++i) s.sums[0].push_back(rng.uniform(0.5, 1.5));
        s.sums.emplace_back();
        for (int j = 0; j < size; ++j) s.sums[1].push_back(rng.uniform(0.5, 1.5));
        double t0 = 0.0, t1 = 0.0;
        for (double v : s.sums[0]) t0 += v;
        for (double v : s.sums[1]) t1 += v;
        for (double& v : s.sums[1]) v *= t0 / t1;

        SparseTensor b = tensor_on_pattern(dims, pattern, 0.5, 1.5, rng);
        if (!pattern_feasible_maxflow(b, s)) return {std::move(b), std::move(s)};
    }

    // Known infeasible family: full pattern minus the (1,1) cell, with the
    // first column demanding more mass than rows 2..size can supply.
    std::vector<std::vector<int>> pattern;
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            if (i != 0 || j != 0) pattern.push_back({i, j});
    SparseTensor b = tensor_on_pattern(dims, pattern, 0.5, 1.5, rng);
    TargetSums s;
    s.sums.push_back(std::vector<double>(size, 1.0));
    std::vector<double> col(size, 0.5 / (size - 1));
    col[0] = size - 0.5;
    s.sums.push_back(std::move(col));
    return {std::move(b), std::move(s)};
}

}  // namespace slicescale
