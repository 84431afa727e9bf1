#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "slicescale/tensor.hpp"

namespace slicescale {

/// Raised on malformed input files; message names the offending line.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text formats. Lines starting with '#' are comments. A ".json" suffix
// selects the JSON mirror of either format.
SparseTensor load_tensor(const std::string& path);
TargetSums load_targets(const std::string& path);

SparseTensor parse_tensor_text(std::istream& in, const std::string& name);
TargetSums parse_targets_text(std::istream& in, const std::string& name);

void write_tensor(std::ostream& out, const SparseTensor& t);
void write_targets(std::ostream& out, const TargetSums& s);
/// Targets-like layout with a caller-chosen header line ("scaling v1",
/// "certificate v1").
void write_mode_vectors(std::ostream& out, const std::string& header,
                        const std::vector<std::vector<double>>& vecs);

void save_tensor(const std::string& path, const SparseTensor& t);
void save_targets(const std::string& path, const TargetSums& s);

/// 17 significant digits, enough to round-trip a double.
std::string format_double(double v);

}  // namespace slicescale
