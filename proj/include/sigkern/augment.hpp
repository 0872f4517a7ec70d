#pragma once

#include <optional>

#include "sigkern/sequence.hpp"

namespace sigkern {

/// Path augmentations applied in the fixed order
/// lead_lag -> basepoint -> time parametrization.
struct AugmentationSpec {
    std::optional<double> time_param; ///< parametrization intensity beta > 0
    bool basepoint = false;
    bool lead_lag = false;
};

/// Prepends a time coordinate beta * i / length (1-based i) to every state.
Sequence add_time(const Sequence& x, double beta);

/// Prepends an all-zero state; length grows by one.
Sequence add_basepoint(const Sequence& x);

/// Interleaves the sequence with its one-step lag:
/// (x_1,x_1),(x_2,x_1),(x_2,x_2),...,(x_L,x_{L-1}),(x_L,x_L).
/// Output has length 2L-1 and dimension 2d.
Sequence lead_lag(const Sequence& x);

Sequence apply_augmentations(const AugmentationSpec& spec, const Sequence& x);
SequenceDataset apply_augmentations(const AugmentationSpec& spec, const SequenceDataset& data);

/// Unit-norm normalization in feature space expressed on kernel values:
/// entry (i,j) becomes gram(i,j) / sqrt(diag_x[i] * diag_y[j]).
/// Throws NormalizationError on a nonpositive diagonal entry.
Eigen::MatrixXd normalize_kernel(const Eigen::MatrixXd& gram, const Vector& diag_x,
                                 const Vector& diag_y);

/// phi / ||phi||_2. Throws NormalizationError on the zero vector.
Vector normalize_features(const Vector& phi);

} // namespace sigkern
