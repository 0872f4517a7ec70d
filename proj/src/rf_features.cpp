#include "sigkern/rf_features.hpp"

#include <algorithm>
#include <cmath>

#include "sigkern/errors.hpp"
#include "sigkern/parallel.hpp"
#include "sigkern/rng.hpp"

namespace sigkern {

namespace {

// Elementwise lift of all states at one signature level, rows aligned with
// time. Layout matches rff_map: cos block then sin block, scaled 1/sqrt(dt).
Matrix rff_lift(const Matrix& weights, const Matrix& states) {
    const Eigen::Index d_tilde = weights.cols();
    const Matrix proj = states * weights;
    Matrix phi(states.rows(), 2 * d_tilde);
    const double scale = 1.0 / std::sqrt(double(d_tilde));
    phi.leftCols(d_tilde) = scale * proj.array().cos();
    phi.rightCols(d_tilde) = scale * proj.array().sin();
    return phi;
}

// Width-1 copies lift for the diagonal projection: interleaved (cos_q, sin_q)
// pairs per frequency column, unscaled.
Matrix rff_pair_lift(const Matrix& weights, const Matrix& states) {
    const Eigen::Index d_tilde = weights.cols();
    const Matrix proj = states * weights;
    Matrix phi(states.rows(), 2 * d_tilde);
    for (Eigen::Index t = 0; t < states.rows(); ++t) {
        for (Eigen::Index q = 0; q < d_tilde; ++q) {
            phi(t, 2 * q) = std::cos(proj(t, q));
            phi(t, 2 * q + 1) = std::sin(proj(t, q));
        }
    }
    return phi;
}

Matrix time_diff(const Matrix& rows) {
    Matrix d(rows.rows() - 1, rows.cols());
    for (Eigen::Index t = 0; t + 1 < rows.rows(); ++t) {
        d.row(t) = rows.row(t + 1) - rows.row(t);
    }
    return d;
}

// Shift by one step then accumulate: row t becomes the sum of rows < t.
// This realizes the strict ordering i_1 < ... < i_m of the index tuples.
void shifted_cumsum_rows(Matrix& v) {
    Eigen::RowVectorXd carry = Eigen::RowVectorXd::Zero(v.cols());
    for (Eigen::Index t = 0; t < v.rows(); ++t) {
        const Eigen::RowVectorXd current = v.row(t);
        v.row(t) = carry;
        carry += current;
    }
}

// Column sums accumulated in time order, so padded zero increments cannot
// change the result even in the last ulp.
Vector time_ordered_sum(const Matrix& v) {
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(v.cols());
    for (Eigen::Index t = 0; t < v.rows(); ++t) acc += v.row(t);
    return acc.transpose();
}

void check_feature_inputs(const RandomFourierWeights& weights, int truncation,
                          const SequenceDataset& data) {
    if (truncation < 1) throw InvalidParameter("feature truncation level must be >= 1");
    if (weights.level_count() < truncation) {
        throw DimensionMismatch("fewer frequency levels than the requested truncation");
    }
    if (weights.dim() != data.dim()) {
        throw DimensionMismatch("frequency matrices do not match the state dimension");
    }
}

LeveledFeatures zero_features(FeatureMethod method, int rff_dim, int truncation,
                              const std::vector<Eigen::Index>& widths) {
    LeveledFeatures f;
    f.method = method;
    f.rff_dim = rff_dim;
    f.levels.resize(std::size_t(truncation) + 1);
    for (int m = 1; m <= truncation; ++m) {
        f.levels[std::size_t(m)] = Vector::Zero(widths[std::size_t(m)]);
    }
    if (method == FeatureMethod::RfsfDp) {
        f.levels[0] = Vector::Constant(rff_dim, 1.0 / std::sqrt(double(rff_dim)));
    } else {
        f.levels[0] = Vector::Constant(1, 1.0);
    }
    return f;
}

LeveledFeatures rfsf_one(const RandomFourierWeights& weights, int truncation, const Sequence& x) {
    const Eigen::Index d_tilde = weights.rff_dim();
    const Eigen::Index u_width = 2 * d_tilde;
    std::vector<Eigen::Index> widths(std::size_t(truncation) + 1);
    Eigen::Index w = 1;
    for (int m = 0; m <= truncation; ++m) {
        widths[std::size_t(m)] = w;
        w *= u_width;
    }
    LeveledFeatures f =
        zero_features(FeatureMethod::RfsfFull, int(d_tilde), truncation, widths);
    if (x.length() < 2) return f;

    Matrix v = time_diff(rff_lift(weights.levels[0], x.values()));
    f.levels[1] = time_ordered_sum(v);
    for (int m = 2; m <= truncation; ++m) {
        const Matrix u = time_diff(rff_lift(weights.levels[std::size_t(m - 1)], x.values()));
        shifted_cumsum_rows(v);
        Matrix next(v.rows(), v.cols() * u_width);
        for (Eigen::Index t = 0; t < v.rows(); ++t) {
            for (Eigen::Index a = 0; a < v.cols(); ++a) {
                const double va = v(t, a);
                for (Eigen::Index b = 0; b < u_width; ++b) {
                    next(t, a * u_width + b) = va * u(t, b);
                }
            }
        }
        v = std::move(next);
        f.levels[std::size_t(m)] = time_ordered_sum(v);
    }
    return f;
}

LeveledFeatures rfsf_dp_one(const RandomFourierWeights& weights, int truncation,
                            const Sequence& x) {
    const Eigen::Index d_tilde = weights.rff_dim();
    std::vector<Eigen::Index> widths(std::size_t(truncation) + 1);
    for (int m = 0; m <= truncation; ++m) {
        widths[std::size_t(m)] = d_tilde * (Eigen::Index(1) << m);
    }
    LeveledFeatures f = zero_features(FeatureMethod::RfsfDp, int(d_tilde), truncation, widths);
    if (x.length() < 2) return f;

    Matrix v = time_diff(rff_pair_lift(weights.levels[0], x.values()));
    v *= 1.0 / std::sqrt(double(d_tilde));
    f.levels[1] = time_ordered_sum(v);
    for (int m = 2; m <= truncation; ++m) {
        const Matrix u = time_diff(rff_pair_lift(weights.levels[std::size_t(m - 1)], x.values()));
        shifted_cumsum_rows(v);
        const Eigen::Index w_old = Eigen::Index(1) << (m - 1);
        Matrix next(v.rows(), d_tilde * w_old * 2);
        for (Eigen::Index t = 0; t < v.rows(); ++t) {
            for (Eigen::Index q = 0; q < d_tilde; ++q) {
                const double uc = u(t, 2 * q);
                const double us = u(t, 2 * q + 1);
                const Eigen::Index src = q * w_old;
                const Eigen::Index dst = q * w_old * 2;
                for (Eigen::Index a = 0; a < w_old; ++a) {
                    const double va = v(t, src + a);
                    next(t, dst + 2 * a) = va * uc;
                    next(t, dst + 2 * a + 1) = va * us;
                }
            }
        }
        v = std::move(next);
        f.levels[std::size_t(m)] = time_ordered_sum(v);
    }
    return f;
}

LeveledFeatures rfsf_trp_one(const RandomFourierWeights& weights, const TrpProjection& projection,
                             int truncation, const Sequence& x) {
    const Eigen::Index d_tilde = weights.rff_dim();
    std::vector<Eigen::Index> widths(std::size_t(truncation) + 1, d_tilde);
    widths[0] = 1;
    LeveledFeatures f = zero_features(FeatureMethod::RfsfTrp, int(d_tilde), truncation, widths);
    if (x.length() < 2) return f;

    Matrix v = time_diff(rff_lift(weights.levels[0], x.values())) * projection.levels[0];
    v *= 1.0 / std::sqrt(double(d_tilde));
    f.levels[1] = time_ordered_sum(v);
    for (int m = 2; m <= truncation; ++m) {
        const Matrix u = time_diff(rff_lift(weights.levels[std::size_t(m - 1)], x.values())) *
                         projection.levels[std::size_t(m - 1)];
        shifted_cumsum_rows(v);
        v = v.cwiseProduct(u);
        f.levels[std::size_t(m)] = time_ordered_sum(v);
    }
    return f;
}

} // namespace

const char* method_name(FeatureMethod method) {
    switch (method) {
        case FeatureMethod::RfsfFull: return "rfsf";
        case FeatureMethod::RfsfDp: return "rfsf-dp";
        case FeatureMethod::RfsfTrp: return "rfsf-trp";
    }
    return "?";
}

FeatureMethod parse_method(const std::string& name) {
    if (name == "rfsf") return FeatureMethod::RfsfFull;
    if (name == "rfsf-dp") return FeatureMethod::RfsfDp;
    if (name == "rfsf-trp") return FeatureMethod::RfsfTrp;
    throw InvalidParameter("unknown feature method: " + name);
}

TrpProjection sample_trp_projection(int rff_dim, int levels, std::uint64_t seed) {
    if (rff_dim < 1 || levels < 1) {
        throw InvalidParameter("projection sampling requires rff_dim, levels >= 1");
    }
    TrpProjection projection;
    projection.levels.reserve(levels);
    for (int m = 1; m <= levels; ++m) {
        RngStream rng(seed, std::uint64_t(levels + m));
        Matrix P(2 * rff_dim, rff_dim);
        for (Eigen::Index i = 0; i < P.rows(); ++i) {
            for (Eigen::Index j = 0; j < P.cols(); ++j) {
                P(i, j) = rng.gaussian();
            }
        }
        projection.levels.push_back(std::move(P));
    }
    return projection;
}

Eigen::Index LeveledFeatures::width() const {
    Eigen::Index w = 0;
    for (const Vector& block : levels) w += block.size();
    return w;
}

Vector LeveledFeatures::flat() const {
    Vector out(width());
    Eigen::Index at = 0;
    for (const Vector& block : levels) {
        out.segment(at, block.size()) = block;
        at += block.size();
    }
    return out;
}

std::vector<LeveledFeatures> rfsf_features(const RandomFourierWeights& weights, int truncation,
                                           const SequenceDataset& data, int threads) {
    check_feature_inputs(weights, truncation, data);
    if (std::pow(2.0 * weights.rff_dim(), truncation) > 1e6) {
        throw MemoryGuardExceeded("full tensor features exceed 1e6 entries per sequence");
    }
    std::vector<LeveledFeatures> out(data.size());
    parallel_for(data.size(), threads,
                 [&](std::size_t i) { out[i] = rfsf_one(weights, truncation, data[i]); });
    return out;
}

std::vector<LeveledFeatures> rfsf_dp_features(const RandomFourierWeights& weights, int truncation,
                                              const SequenceDataset& data, int threads) {
    check_feature_inputs(weights, truncation, data);
    std::vector<LeveledFeatures> out(data.size());
    parallel_for(data.size(), threads,
                 [&](std::size_t i) { out[i] = rfsf_dp_one(weights, truncation, data[i]); });
    return out;
}

std::vector<LeveledFeatures> rfsf_trp_features(const RandomFourierWeights& weights,
                                               const TrpProjection& projection, int truncation,
                                               const SequenceDataset& data, int threads) {
    check_feature_inputs(weights, truncation, data);
    if (projection.level_count() < truncation) {
        throw DimensionMismatch("fewer projection levels than the requested truncation");
    }
    for (const Matrix& P : projection.levels) {
        if (P.rows() != 2 * weights.rff_dim() || P.cols() != weights.rff_dim()) {
            throw DimensionMismatch("projection shape must be 2*rff_dim x rff_dim");
        }
    }
    std::vector<LeveledFeatures> out(data.size());
    parallel_for(data.size(), threads, [&](std::size_t i) {
        out[i] = rfsf_trp_one(weights, projection, truncation, data[i]);
    });
    return out;
}

Eigen::MatrixXd feature_gram(const std::vector<LeveledFeatures>& feats_x,
                             const std::vector<LeveledFeatures>& feats_y,
                             const std::vector<int>& levels, int threads) {
    if (feats_x.empty() || feats_y.empty()) {
        throw InvalidParameter("feature gram requires nonempty feature sets");
    }
    const LeveledFeatures& ref = feats_x.front();
    auto compatible = [&](const LeveledFeatures& f) {
        return f.method == ref.method && f.rff_dim == ref.rff_dim &&
               f.truncation() == ref.truncation();
    };
    for (const auto& f : feats_x) {
        if (!compatible(f)) throw DimensionMismatch("mixed feature methods or widths");
    }
    for (const auto& f : feats_y) {
        if (!compatible(f)) throw DimensionMismatch("mixed feature methods or widths");
    }

    std::vector<int> selected;
    selected.push_back(0); // the constant level always participates
    if (levels.empty()) {
        for (int m = 1; m <= ref.truncation(); ++m) selected.push_back(m);
    } else {
        for (int m : levels) {
            if (m < 0 || m > ref.truncation()) {
                throw InvalidParameter("selected level outside 0..truncation");
            }
            if (m != 0) selected.push_back(m);
        }
        std::sort(selected.begin(), selected.end());
        selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    }

    Eigen::MatrixXd gram(feats_x.size(), feats_y.size());
    parallel_for(feats_x.size() * feats_y.size(), threads, [&](std::size_t cell) {
        const std::size_t i = cell / feats_y.size();
        const std::size_t j = cell % feats_y.size();
        double acc = 0.0;
        for (int m : selected) {
            acc += feats_x[i].levels[std::size_t(m)].dot(feats_y[j].levels[std::size_t(m)]);
        }
        gram(Eigen::Index(i), Eigen::Index(j)) = acc;
    });
    return gram;
}

} // namespace sigkern
