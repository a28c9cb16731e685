#pragma once

#include <complex>
#include <vector>

namespace polysum {

// Largest pairwise distance after greedily matching the two point multisets
// (globally nearest pairs first). Returns +infinity on a size mismatch.
double max_matching_distance(const std::vector<std::complex<double>>& a,
                             const std::vector<std::complex<double>>& b);

}  // namespace polysum
