#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigkern/sequence.hpp"
#include "sigkern/static_kernels.hpp"

namespace sigkern {

enum class FeatureMethod {
    RfsfFull, ///< full tensor features, level-m width (2*d_tilde)^m
    RfsfDp,   ///< diagonal projection, level-m width 2^m * d_tilde
    RfsfTrp,  ///< tensor random projection, level-m width d_tilde
};

const char* method_name(FeatureMethod method);
FeatureMethod parse_method(const std::string& name);

/// Per-level Gaussian projection matrices P^(1..M), each 2*d_tilde x d_tilde
/// with iid standard normal entries. Level m is drawn from stream id
/// level_count + m so projections never collide with the frequency draws of
/// the same seed.
struct TrpProjection {
    std::vector<Matrix> levels;

    int rff_dim() const { return levels.empty() ? 0 : int(levels.front().cols()); }
    int level_count() const { return int(levels.size()); }
};

TrpProjection sample_trp_projection(int rff_dim, int levels, std::uint64_t seed);

/// Signature-level feature blocks of one sequence.
///
/// Flat layout is level-major: [level 0 | level 1 | ... | level M]. Within a
/// level, RfsfDp blocks are copy-index major (all tensor coordinates of copy
/// q, then copy q+1), and tensor coordinates are lexicographic with the
/// lowest signature level as the most significant digit. Level 0 is the
/// constant block: a single 1 for RfsfFull/RfsfTrp, and d_tilde entries of
/// 1/sqrt(d_tilde) for RfsfDp.
struct LeveledFeatures {
    FeatureMethod method = FeatureMethod::RfsfFull;
    int rff_dim = 0;
    std::vector<Vector> levels;

    int truncation() const { return int(levels.size()) - 1; }
    Eigen::Index width() const;
    Vector flat() const;
};

/// Full random Fourier signature features (guarded: (2*d_tilde)^M <= 1e6).
std::vector<LeveledFeatures> rfsf_features(const RandomFourierWeights& weights, int truncation,
                                           const SequenceDataset& data, int threads = 0);

/// Diagonally projected variant: d_tilde independent width-1 copies,
/// concatenated and scaled by 1/sqrt(d_tilde).
std::vector<LeveledFeatures> rfsf_dp_features(const RandomFourierWeights& weights, int truncation,
                                              const SequenceDataset& data, int threads = 0);

/// Tensor-random-projected variant: per-level Hadamard recursion over
/// projected increments, width d_tilde per level.
std::vector<LeveledFeatures> rfsf_trp_features(const RandomFourierWeights& weights,
                                               const TrpProjection& projection, int truncation,
                                               const SequenceDataset& data, int threads = 0);

/// Gram of flat features restricted to the selected levels; level 0 is
/// always included. An empty selection means all levels.
Eigen::MatrixXd feature_gram(const std::vector<LeveledFeatures>& feats_x,
                             const std::vector<LeveledFeatures>& feats_y,
                             const std::vector<int>& levels = {}, int threads = 0);

} // namespace sigkern
