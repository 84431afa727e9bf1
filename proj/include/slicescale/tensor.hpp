#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slicescale {

/// One stored entry of a sparse tensor: 0-based index tuple plus a
/// strictly positive value. Zeros are represented by absence.
struct Entry {
    std::vector<int> idx;
    double value;

    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse d-mode nonnegative tensor in coordinate form. Entries are
/// sorted lexicographically by index tuple and unique; construction
/// enforces this.
class SparseTensor {
public:
    SparseTensor(std::vector<int> dims, std::vector<Entry> entries);

    int num_modes() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    /// Sum of all stored values.
    double total() const;

    friend bool operator==(const SparseTensor&, const SparseTensor&) = default;

private:
    std::vector<int> dims_;
    std::vector<Entry> entries_;
};

/// Prescribed positive slice-sum vectors, one per mode.
struct TargetSums {
    std::vector<std::vector<double>> sums;

    int num_modes() const { return static_cast<int>(sums.size()); }
    /// Total of mode k's targets.
    double mode_total(int k) const;
    double total() const { return mode_total(0); }
};

/// Log-domain scaling exponents, one vector per mode. Identified with a
/// stacked vector y of length n = sum of dims.
struct ScalingVectors {
    std::vector<std::vector<double>> modes;

    std::vector<double> stacked() const;
    static ScalingVectors from_stacked(const std::vector<int>& dims,
                                       const std::vector<double>& y);
    static ScalingVectors zeros(const std::vector<int>& dims);
};

/// Stacked-vector layout: mode k occupies [offset(k), offset(k)+dims[k]).
struct ModeLayout {
    explicit ModeLayout(const std::vector<int>& dims);
    int n;                        // sum of dims
    std::vector<int> offsets;     // per-mode start in the stacked vector
    int pos(int mode, int index) const { return offsets[mode] + index; }
};

/// Slice sums along mode k (0-based): component i is the sum of all
/// entries whose k-th index is i.
std::vector<double> slice_sums(const SparseTensor& t, int k);

/// A (mode, index) pair naming a zero slice.
struct ZeroSlice {
    int mode;
    int index;
    friend bool operator==(const ZeroSlice&, const ZeroSlice&) = default;
};

/// Empty result means every slice is hit by at least one entry.
std::vector<ZeroSlice> validate_no_zero_slice(const SparseTensor& t);

struct CompatibilityReport {
    bool ok;
    double min_total;
    double max_total;
};

/// Targets are compatible when all mode totals agree within rel_tol.
CompatibilityReport check_compatibility(const TargetSums& s, double rel_tol = 1e-9);

/// True iff the support sets coincide. Throws on dimension mismatch.
bool same_zero_pattern(const SparseTensor& a, const SparseTensor& b);

/// Entrywise b * exp(x_{1,i1} + ... + x_{d,id}). The exponent sum is formed
/// once per entry before a single exponentiation. Any exponent sum whose
/// magnitude exceeds exponent_cap throws.
SparseTensor apply_scaling(const SparseTensor& b, const ScalingVectors& x,
                           double exponent_cap = 700.0);

/// Max over all (k,i) of |slice_sums(a,k)[i] - s_{k,i}| / s_{k,i}.
double residual(const SparseTensor& a, const TargetSums& s);

/// Sum of all targets as one stacked vector of length n.
std::vector<double> stacked_targets(const TargetSums& s);

}  // namespace slicescale
