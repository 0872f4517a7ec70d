#pragma once

#include <cstdint>
#include <vector>

#include "sigkern/sequence.hpp"

namespace sigkern {

/// Gaussian (RBF) kernel k(x, y) = exp(-||x - y||^2 / (2 sigma^2)).
/// Its spectral measure is N(0, sigma^{-2} I), which is what the random
/// Fourier samplers below draw from.
class RbfStaticKernel {
public:
    explicit RbfStaticKernel(double bandwidth);

    double bandwidth() const { return sigma_; }

    double operator()(ConstRowRef x, ConstRowRef y) const;

    /// Kernel matrix between the rows of X and the rows of Y.
    Eigen::MatrixXd matrix(const Matrix& X, const Matrix& Y) const;

private:
    double sigma_;
};

/// One draw of the per-level frequency matrices W^(1..M), each d x d_tilde
/// with entries iid N(0, 1/sigma^2). Level m is drawn from stream id m, so
/// raising the truncation never perturbs earlier levels.
struct RandomFourierWeights {
    std::vector<Matrix> levels;
    double sigma = 0.0;
    std::uint64_t seed = 0;

    int dim() const { return levels.empty() ? 0 : int(levels.front().rows()); }
    int rff_dim() const { return levels.empty() ? 0 : int(levels.front().cols()); }
    int level_count() const { return int(levels.size()); }
};

RandomFourierWeights sample_spectral(double sigma, int dim, int rff_dim, int levels,
                                     std::uint64_t seed);

/// Random Fourier feature map (cos(W^T x), sin(W^T x)) / sqrt(d_tilde).
/// The output has 2 * d_tilde entries and unit Euclidean norm.
Vector rff_map(const Matrix& weights, ConstRowRef x);

/// <rff_map(x), rff_map(y)> evaluated through the displacement x - y, i.e.
/// mean of cos(w_i^T (x - y)); this form is exactly translation-invariant.
double rff_kernel(const Matrix& weights, ConstRowRef x, ConstRowRef y);

struct MedianHeuristicConfig {
    double alpha = 1.0;
    std::size_t subsample_cap = 1'000'000;
    /// Whether state pairs drawn from the same sequence participate.
    bool include_within_sequence = true;
    /// Drives the pair subsample when the pair count exceeds the cap.
    std::uint64_t seed = 0;
};

/// Rescaled median heuristic: alpha * median of half pairwise state
/// distances across the dataset. Throws DegenerateBandwidth when the median
/// distance is zero.
double median_heuristic(const SequenceDataset& data, const MedianHeuristicConfig& config);

} // namespace sigkern
