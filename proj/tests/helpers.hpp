#pragma once

#include <vector>

#include "slicescale/rng.hpp"
#include "slicescale/tensor.hpp"

namespace slicescale::testing {

/// Dense 2-D initializer; zeros become absent entries.
inline SparseTensor matrix(const std::vector<std::vector<double>>& rows) {
    std::vector<Entry> entries;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        for (int j = 0; j < static_cast<int>(rows[i].size()); ++j)
            if (rows[i][j] != 0.0) entries.push_back({{i, j}, rows[i][j]});
    return SparseTensor({static_cast<int>(rows.size()), static_cast<int>(rows[0].size())},
                        std::move(entries));
}

inline SparseTensor all_ones(const std::vector<int>& dims) {
    std::vector<Entry> entries;
    std::vector<int> idx(dims.size(), 0);
    for (;;) {
        entries.push_back({idx, 1.0});
        int k = static_cast<int>(dims.size()) - 1;
        while (k >= 0 && ++idx[k] == dims[k]) idx[k--] = 0;
        if (k < 0) break;
    }
    return SparseTensor(dims, std::move(entries));
}

inline TargetSums targets(std::vector<std::vector<double>> sums) {
    return TargetSums{std::move(sums)};
}

/// Random positive tensor on the given pattern density, plus targets drawn
/// from an independent witness on the same pattern (so the pair is feasible).
inline SparseTensor random_full_tensor(const std::vector<int>& dims, SplitMix64& rng,
                                       double lo = 0.5, double hi = 1.5) {
    std::vector<Entry> entries;
    std::vector<int> idx(dims.size(), 0);
    for (;;) {
        entries.push_back({idx, rng.uniform(lo, hi)});
        int k = static_cast<int>(dims.size()) - 1;
        while (k >= 0 && ++idx[k] == dims[k]) idx[k--] = 0;
        if (k < 0) break;
    }
    return SparseTensor(dims, std::move(entries));
}

}  // namespace slicescale::testing
