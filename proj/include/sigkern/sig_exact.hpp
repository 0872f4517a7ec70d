#pragma once

#include <vector>

#include "sigkern/sequence.hpp"
#include "sigkern/static_kernels.hpp"

namespace sigkern {

struct SigKernelConfig {
    int truncation;          ///< highest signature level M >= 1
    RbfStaticKernel kernel;  ///< static kernel lifted to sequences
};

/// Per-level kernel values k^(0..M); level 0 is the constant 1.
struct LeveledKernelValues {
    std::vector<double> levels;

    double total() const;
    int truncation() const { return int(levels.size()) - 1; }
};

/// M-truncated signature kernel through the dynamic program
///
///   k^(m)(x, y) = sum_{k,l} k^(m-1)(x_{1:k}, y_{1:l}) * d2[k][l],
///
/// where d2 is the second-order cross-difference array of the static kernel
/// over state pairs. Each level costs one pass over the (len_x-1, len_y-1)
/// grid via shifted prefix sums, so the whole evaluation is
/// O(M * len_x * len_y). Levels with fewer increments than their order are
/// exactly zero.
LeveledKernelValues sig_kernel_dp(const SigKernelConfig& config, const Sequence& x,
                                  const Sequence& y);

/// Reference evaluation by direct enumeration of strictly increasing index
/// tuples on both sequences. Throws OracleTooLarge when the tuple count for
/// any level exceeds 1e7.
LeveledKernelValues sig_kernel_bruteforce(const SigKernelConfig& config, const Sequence& x,
                                          const Sequence& y);

/// Gram matrix of truncated kernel values (levels summed) between datasets.
Eigen::MatrixXd sig_gram(const SigKernelConfig& config, const SequenceDataset& X,
                         const SequenceDataset& Y, int threads = 0);

/// Self-Gram; computes the upper triangle and mirrors it.
Eigen::MatrixXd sig_gram(const SigKernelConfig& config, const SequenceDataset& X,
                         int threads = 0);

} // namespace sigkern
