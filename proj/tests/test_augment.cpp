#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sigkern/augment.hpp"
#include "sigkern/errors.hpp"
#include "sigkern/rf_features.hpp"
#include "test_util.hpp"

using namespace sigkern;
using testutil::constant_sequence;
using testutil::random_sequence;

TEST_CASE("add_time prepends beta*i/len with 1-based steps") {
    Matrix v(2, 1);
    v << 4.0, -1.0;
    const Sequence out = add_time(Sequence(v), 1.0);
    CHECK(out.dim() == 2);
    CHECK(out.values()(0, 0) == 0.5);
    CHECK(out.values()(1, 0) == 1.0);
    CHECK(out.values()(0, 1) == 4.0);
    CHECK(out.values()(1, 1) == -1.0);

    CHECK_THROWS_AS(add_time(Sequence(v), 0.0), InvalidParameter);
    CHECK_THROWS_AS(add_time(Sequence(v), -2.0), InvalidParameter);
}

TEST_CASE("add_time never shrinks 1-variation and strips back exactly") {
    RngStream rng(5, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const Sequence x = random_sequence(rng, 2 + int(rng.below(12)), 1 + int(rng.below(4)));
        const double beta = 0.1 + 3.0 * rng.uniform();
        const Sequence timed = add_time(x, beta);
        CHECK(one_variation(timed) >= one_variation(x));
        CHECK(testutil::exactly_equal(timed.values().rightCols(x.dim()), x.values()));
    }
}

TEST_CASE("add_basepoint prepends one zero state") {
    Matrix v(1, 2);
    v << 1.0, 2.0;
    const Sequence out = add_basepoint(Sequence(v));
    REQUIRE(out.length() == 2);
    CHECK(out.values().row(0).norm() == 0.0);
    CHECK(testutil::exactly_equal(out.values().row(1), v.row(0)));

    RngStream rng(6, 0);
    const Sequence x = random_sequence(rng, 9, 3);
    const double lifted = one_variation(add_basepoint(x));
    CHECK(lifted == doctest::Approx(one_variation(x) + x.values().row(0).norm()).epsilon(1e-12));
}

TEST_CASE("lead_lag interleaves the printed pattern") {
    Matrix v(2, 1);
    v << 3.0, 8.0;
    const Sequence out = lead_lag(Sequence(v));
    REQUIRE(out.length() == 3);
    REQUIRE(out.dim() == 2);
    CHECK(out.values()(0, 0) == 3.0);
    CHECK(out.values()(0, 1) == 3.0);
    CHECK(out.values()(1, 0) == 8.0);
    CHECK(out.values()(1, 1) == 3.0);
    CHECK(out.values()(2, 0) == 8.0);
    CHECK(out.values()(2, 1) == 8.0);

    SUBCASE("length-1 input maps to ((x1,x1))") {
        Matrix single(1, 1);
        single << 5.0;
        const Sequence one = lead_lag(Sequence(single));
        CHECK(one.length() == 1);
        CHECK(one.values()(0, 0) == 5.0);
        CHECK(one.values()(0, 1) == 5.0);
    }
}

TEST_CASE("lead_lag shape law and odd-position recovery") {
    RngStream rng(9, 2);
    for (int trial = 0; trial < 15; ++trial) {
        const int len = 1 + int(rng.below(10));
        const int dim = 1 + int(rng.below(4));
        const Sequence x = random_sequence(rng, len, dim);
        const Sequence out = lead_lag(x);
        CHECK(out.length() == 2 * len - 1);
        CHECK(out.dim() == 2 * dim);
        for (int k = 0; k < len; ++k) {
            CHECK(testutil::exactly_equal(out.values().row(2 * k).head(dim), x.values().row(k)));
        }
    }
}

TEST_CASE("augmentations compose in the fixed order") {
    Matrix v(2, 1);
    v << 1.0, 2.0;
    AugmentationSpec spec;
    spec.lead_lag = true;
    spec.basepoint = true;
    spec.time_param = 2.0;
    const Sequence out = apply_augmentations(spec, Sequence(v));
    // lead_lag: 3 states of dim 2; basepoint: 4 states; time: dim 3.
    REQUIRE(out.length() == 4);
    REQUIRE(out.dim() == 3);
    CHECK(out.values()(0, 0) == 0.5); // 2*1/4
    CHECK(out.values()(0, 1) == 0.0);
    CHECK(out.values()(3, 0) == 2.0);
    CHECK(out.values()(3, 1) == 2.0);
    CHECK(out.values()(3, 2) == 2.0);
}

namespace {

Eigen::MatrixXd random_psd_gram(RngStream& rng, int n) {
    Matrix f(n, n + 2);
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
        for (Eigen::Index j = 0; j < f.cols(); ++j) {
            f(i, j) = rng.gaussian();
        }
    }
    return Eigen::MatrixXd(f * f.transpose());
}

} // namespace

TEST_CASE("normalize_kernel") {
    RngStream rng(31, 0);
    const Eigen::MatrixXd gram = random_psd_gram(rng, 8);
    const Eigen::MatrixXd normalized = normalize_kernel(gram, gram.diagonal(), gram.diagonal());

    SUBCASE("unit diagonal") {
        for (Eigen::Index i = 0; i < normalized.rows(); ++i) {
            CHECK(std::abs(normalized(i, i) - 1.0) < 1e-12);
        }
    }

    SUBCASE("identity diagonal leaves the matrix unchanged") {
        const Vector ones = Vector::Ones(gram.rows());
        CHECK(testutil::exactly_equal(normalize_kernel(gram, ones, ones), gram));
    }

    SUBCASE("uniform feature scaling cancels") {
        const double c = 3.7;
        const Eigen::MatrixXd scaled =
            normalize_kernel(c * c * gram, c * c * gram.diagonal(), c * c * gram.diagonal());
        CHECK((scaled - normalized).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("idempotent") {
        const Eigen::MatrixXd twice =
            normalize_kernel(normalized, normalized.diagonal(), normalized.diagonal());
        CHECK((twice - normalized).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("nonpositive diagonal is rejected") {
        Vector diag = gram.diagonal();
        diag[2] = 0.0;
        CHECK_THROWS_AS(normalize_kernel(gram, diag, gram.diagonal()), NormalizationError);
    }
}

TEST_CASE("normalize_features") {
    Vector unit(2);
    unit << 1.0, 0.0;
    CHECK(testutil::exactly_equal(normalize_features(unit), unit));

    CHECK_THROWS_AS(normalize_features(Vector::Zero(4)), NormalizationError);

    RngStream rng(32, 0);
    Vector a(6), b(6);
    for (int i = 0; i < 6; ++i) {
        a[i] = rng.gaussian();
        b[i] = rng.gaussian();
    }
    const double direct = a.dot(b) / (a.norm() * b.norm());
    CHECK(std::abs(normalize_features(a).dot(normalize_features(b)) - direct) < 1e-12);
}

TEST_CASE("feature-side and kernel-side normalization agree on rfsf-dp features") {
    RngStream rng(33, 0);
    std::vector<Sequence> sequences;
    for (int i = 0; i < 5; ++i) {
        sequences.push_back(random_sequence(rng, 6 + int(rng.below(4)), 3));
    }
    const SequenceDataset data{std::move(sequences)};
    const RandomFourierWeights weights = sample_spectral(1.0, 3, 6, 3, 99);
    const std::vector<LeveledFeatures> features = rfsf_dp_features(weights, 3, data, 1);

    const Eigen::MatrixXd gram = feature_gram(features, features);
    const Eigen::MatrixXd kernel_side = normalize_kernel(gram, gram.diagonal(), gram.diagonal());

    for (std::size_t i = 0; i < features.size(); ++i) {
        for (std::size_t j = 0; j < features.size(); ++j) {
            const double feature_side =
                normalize_features(features[i].flat()).dot(normalize_features(features[j].flat()));
            CHECK(std::abs(feature_side - kernel_side(Eigen::Index(i), Eigen::Index(j))) < 1e-10);
        }
    }
}
