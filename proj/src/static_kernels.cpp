#include "sigkern/static_kernels.hpp"

#include <algorithm>
#include <cmath>

#include "sigkern/errors.hpp"
#include "sigkern/rng.hpp"

namespace sigkern {

RbfStaticKernel::RbfStaticKernel(double bandwidth) : sigma_(bandwidth) {
    if (!(sigma_ > 0.0)) {
        throw InvalidParameter("RBF bandwidth must be positive");
    }
}

double RbfStaticKernel::operator()(ConstRowRef x, ConstRowRef y) const {
    if (x.size() != y.size()) {
        throw DimensionMismatch("RBF arguments must share one dimension");
    }
    const double sq = (x - y).squaredNorm();
    return std::exp(-sq / (2.0 * sigma_ * sigma_));
}

Eigen::MatrixXd RbfStaticKernel::matrix(const Matrix& X, const Matrix& Y) const {
    if (X.cols() != Y.cols()) {
        throw DimensionMismatch("RBF arguments must share one dimension");
    }
    const double scale = -1.0 / (2.0 * sigma_ * sigma_);
    Eigen::MatrixXd K(X.rows(), Y.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        for (Eigen::Index j = 0; j < Y.rows(); ++j) {
            K(i, j) = std::exp(scale * (X.row(i) - Y.row(j)).squaredNorm());
        }
    }
    return K;
}

RandomFourierWeights sample_spectral(double sigma, int dim, int rff_dim, int levels,
                                     std::uint64_t seed) {
    if (!(sigma > 0.0)) throw InvalidParameter("spectral sampling requires sigma > 0");
    if (dim < 1 || rff_dim < 1 || levels < 1) {
        throw InvalidParameter("spectral sampling requires dim, rff_dim, levels >= 1");
    }
    RandomFourierWeights weights;
    weights.sigma = sigma;
    weights.seed = seed;
    weights.levels.reserve(levels);
    const double scale = 1.0 / sigma;
    for (int m = 1; m <= levels; ++m) {
        RngStream rng(seed, std::uint64_t(m));
        Matrix W(dim, rff_dim);
        for (Eigen::Index i = 0; i < W.rows(); ++i) {
            for (Eigen::Index j = 0; j < W.cols(); ++j) {
                W(i, j) = scale * rng.gaussian();
            }
        }
        weights.levels.push_back(std::move(W));
    }
    return weights;
}

Vector rff_map(const Matrix& weights, ConstRowRef x) {
    if (x.size() != weights.rows()) {
        throw DimensionMismatch("state dimension does not match frequency matrix");
    }
    const Eigen::Index d_tilde = weights.cols();
    const Eigen::RowVectorXd proj = x * weights;
    Vector phi(2 * d_tilde);
    const double scale = 1.0 / std::sqrt(double(d_tilde));
    for (Eigen::Index q = 0; q < d_tilde; ++q) {
        phi[q] = scale * std::cos(proj[q]);
        phi[d_tilde + q] = scale * std::sin(proj[q]);
    }
    return phi;
}

double rff_kernel(const Matrix& weights, ConstRowRef x, ConstRowRef y) {
    if (x.size() != weights.rows() || y.size() != weights.rows()) {
        throw DimensionMismatch("state dimension does not match frequency matrix");
    }
    const Eigen::RowVectorXd proj = (x - y) * weights;
    double acc = 0.0;
    for (Eigen::Index q = 0; q < proj.size(); ++q) {
        acc += std::cos(proj[q]);
    }
    return acc / double(proj.size());
}

double median_heuristic(const SequenceDataset& data, const MedianHeuristicConfig& config) {
    if (!(config.alpha > 0.0)) throw InvalidParameter("median heuristic requires alpha > 0");

    // Flatten all states; a pair is any ordered pair of global state indices,
    // optionally restricted to distinct source sequences.
    std::size_t total_states = 0;
    for (const Sequence& s : data) total_states += std::size_t(s.length());
    Matrix states(total_states, data.dim());
    std::vector<std::uint32_t> owner(total_states);
    std::size_t at = 0;
    for (std::size_t si = 0; si < data.size(); ++si) {
        const Sequence& s = data[si];
        states.middleRows(Eigen::Index(at), s.length()) = s.values();
        std::fill(owner.begin() + at, owner.begin() + at + std::size_t(s.length()),
                  std::uint32_t(si));
        at += std::size_t(s.length());
    }

    std::size_t pair_count = total_states * total_states;
    if (!config.include_within_sequence) {
        for (const Sequence& s : data) {
            pair_count -= std::size_t(s.length()) * std::size_t(s.length());
        }
        if (pair_count == 0) {
            throw DegenerateBandwidth("no eligible cross-sequence state pairs");
        }
    }

    std::vector<double> half_dists;
    if (pair_count <= config.subsample_cap) {
        half_dists.reserve(pair_count);
        for (std::size_t a = 0; a < total_states; ++a) {
            for (std::size_t b = 0; b < total_states; ++b) {
                if (!config.include_within_sequence && owner[a] == owner[b]) continue;
                half_dists.push_back(
                    0.5 * (states.row(Eigen::Index(a)) - states.row(Eigen::Index(b))).norm());
            }
        }
    } else {
        RngStream rng(config.seed, RngStream::substream({0x6D65646Eull, total_states}));
        half_dists.reserve(config.subsample_cap);
        while (half_dists.size() < config.subsample_cap) {
            const std::size_t a = rng.below(total_states);
            const std::size_t b = rng.below(total_states);
            if (!config.include_within_sequence && owner[a] == owner[b]) continue;
            half_dists.push_back(
                0.5 * (states.row(Eigen::Index(a)) - states.row(Eigen::Index(b))).norm());
        }
    }

    // Median is the upper median (sorted index n/2); self-pairs contribute
    // zero distances, which must not drag a two-point dataset to sigma 0.
    const std::size_t mid = half_dists.size() / 2;
    std::nth_element(half_dists.begin(), half_dists.begin() + mid, half_dists.end());
    const double median = half_dists[mid];
    if (!(median > 0.0)) {
        throw DegenerateBandwidth("median pairwise distance is zero");
    }
    return config.alpha * median;
}

} // namespace sigkern
