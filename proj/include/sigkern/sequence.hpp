#pragma once

#include <Eigen/Core>
#include <vector>

namespace sigkern {

/// Dense row-major matrix; sequences iterate over rows (time), so per-step
/// state vectors are contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using ConstRowRef = Eigen::Ref<const Eigen::RowVectorXd>;

/// One multivariate time series: length() states of dimension dim().
/// Immutable after construction; all entries are validated finite.
class Sequence {
public:
    explicit Sequence(Matrix values);

    Eigen::Index length() const { return values_.rows(); }
    Eigen::Index dim() const { return values_.cols(); }
    const Matrix& values() const { return values_; }
    ConstRowRef state(Eigen::Index i) const { return values_.row(i); }

private:
    Matrix values_;
};

/// First-order forward differences (x_{i+1} - x_i); length shrinks by one.
/// Throws DegenerateSequence for length-1 input.
Sequence diff(const Sequence& x);

/// Sum of Euclidean norms of the increments; 0 for a length-1 sequence.
double one_variation(const Sequence& x);

/// A nonempty collection of sequences sharing one state dimension.
class SequenceDataset {
public:
    explicit SequenceDataset(std::vector<Sequence> sequences);

    std::size_t size() const { return sequences_.size(); }
    Eigen::Index dim() const { return dim_; }
    Eigen::Index max_len() const { return max_len_; }
    const Sequence& operator[](std::size_t i) const { return sequences_[i]; }
    const std::vector<Sequence>& sequences() const { return sequences_; }

    auto begin() const { return sequences_.begin(); }
    auto end() const { return sequences_.end(); }

private:
    std::vector<Sequence> sequences_;
    Eigen::Index dim_ = 0;
    Eigen::Index max_len_ = 0;
};

/// Pads every sequence to max_len by repeating its final state. The padded
/// increments are zero, so signature-level features and kernels (levels >= 1)
/// are unchanged.
SequenceDataset tabulate(const SequenceDataset& data);

} // namespace sigkern
