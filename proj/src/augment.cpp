#include "sigkern/augment.hpp"

#include <cmath>

#include "sigkern/errors.hpp"

namespace sigkern {

Sequence add_time(const Sequence& x, double beta) {
    if (!(beta > 0.0)) {
        throw InvalidParameter("time parametrization requires beta > 0");
    }
    const Eigen::Index n = x.length();
    Matrix v(n, x.dim() + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i, 0) = beta * double(i + 1) / double(n);
    }
    v.rightCols(x.dim()) = x.values();
    return Sequence(std::move(v));
}

Sequence add_basepoint(const Sequence& x) {
    Matrix v(x.length() + 1, x.dim());
    v.row(0).setZero();
    v.bottomRows(x.length()) = x.values();
    return Sequence(std::move(v));
}

Sequence lead_lag(const Sequence& x) {
    const Eigen::Index n = x.length();
    const Eigen::Index d = x.dim();
    Matrix v(2 * n - 1, 2 * d);
    for (Eigen::Index j = 0; j < 2 * n - 1; ++j) {
        const Eigen::Index lead = j / 2 + j % 2; // 1,2,2,3,3,... as 0-based 0,1,1,2,2,...
        const Eigen::Index lag = j / 2;
        v.row(j).head(d) = x.values().row(lead);
        v.row(j).tail(d) = x.values().row(lag);
    }
    return Sequence(std::move(v));
}

Sequence apply_augmentations(const AugmentationSpec& spec, const Sequence& x) {
    Sequence out = x;
    if (spec.lead_lag) out = lead_lag(out);
    if (spec.basepoint) out = add_basepoint(out);
    if (spec.time_param) out = add_time(out, *spec.time_param);
    return out;
}

SequenceDataset apply_augmentations(const AugmentationSpec& spec, const SequenceDataset& data) {
    std::vector<Sequence> out;
    out.reserve(data.size());
    for (const Sequence& s : data) {
        out.push_back(apply_augmentations(spec, s));
    }
    return SequenceDataset(std::move(out));
}

Eigen::MatrixXd normalize_kernel(const Eigen::MatrixXd& gram, const Vector& diag_x,
                                 const Vector& diag_y) {
    if (gram.rows() != diag_x.size() || gram.cols() != diag_y.size()) {
        throw DimensionMismatch("gram shape does not match diagonal lengths");
    }
    if ((diag_x.array() <= 0.0).any() || (diag_y.array() <= 0.0).any()) {
        throw NormalizationError("kernel normalization requires strictly positive self-similarities");
    }
    const Eigen::ArrayXd sx = diag_x.array().sqrt().inverse();
    const Eigen::ArrayXd sy = diag_y.array().sqrt().inverse();
    Eigen::MatrixXd out = gram;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            out(i, j) *= sx[i] * sy[j];
        }
    }
    return out;
}

Vector normalize_features(const Vector& phi) {
    const double norm = phi.norm();
    if (!(norm > 0.0)) {
        throw NormalizationError("cannot normalize a zero feature vector");
    }
    return phi / norm;
}

} // namespace sigkern
