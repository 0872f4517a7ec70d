#include "sigkern/synth_bench.hpp"

#include <algorithm>
#include <cmath>

#include "sigkern/errors.hpp"
#include "sigkern/parallel.hpp"
#include "sigkern/sig_exact.hpp"

namespace sigkern {

namespace {

// Stream-id tags for the independent random purposes of one study.
constexpr std::uint64_t kTagData = 0x64617461;   // sequence draws
constexpr std::uint64_t kTagMedian = 0x6D656469; // bandwidth pair subsample
constexpr std::uint64_t kTagCell = 0x63656C6C;   // per-evaluation weight draws

std::uint64_t method_tag(FeatureMethod method) {
    switch (method) {
        case FeatureMethod::RfsfFull: return 1;
        case FeatureMethod::RfsfDp: return 2;
        case FeatureMethod::RfsfTrp: return 3;
    }
    return 0;
}

} // namespace

Sequence var1_generate(const Var1Config& config, RngStream& rng) {
    if (config.dim < 1 || config.length < 1) {
        throw InvalidParameter("VAR(1) requires dim >= 1 and length >= 1");
    }
    if (config.noise < 0.0) throw InvalidParameter("VAR(1) noise must be >= 0");
    if (!(config.one_var_target > 0.0)) {
        throw InvalidParameter("VAR(1) target 1-variation must be positive");
    }
    const int d = config.dim;
    Matrix transition(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            transition(i, j) = rng.gaussian();
        }
    }
    const double drift_scale = 1.0 / std::sqrt(double(d));

    Matrix states(config.length + 1, d);
    states.row(0).setZero();
    Eigen::RowVectorXd noise(d);
    for (int t = 0; t < config.length; ++t) {
        for (Eigen::Index j = 0; j < d; ++j) {
            noise[j] = config.noise * rng.gaussian();
        }
        states.row(t + 1) = drift_scale * (states.row(t) * transition.transpose()) + noise;
    }
    if (!config.include_initial) {
        states = states.bottomRows(config.length).eval();
    }

    Sequence raw{Matrix(states)};
    const double total_var = one_variation(raw);
    if (!(total_var > 0.0)) {
        throw DegenerateTrajectory("VAR(1) trajectory has zero 1-variation");
    }
    states *= config.one_var_target / total_var;
    return Sequence(std::move(states));
}

BenchResult approx_error_study(const BenchConfig& config) {
    if (config.methods.empty() || config.truncations.empty() || config.rff_dims.empty()) {
        throw InvalidParameter("benchmark sweep lists must be nonempty");
    }
    for (FeatureMethod method : config.methods) {
        if (method == FeatureMethod::RfsfFull) {
            throw InvalidParameter("benchmark covers rfsf-dp and rfsf-trp only");
        }
    }
    if (config.n_pairs < 1 || config.n_resamples < 1) {
        throw InvalidParameter("benchmark needs n_pairs, n_resamples >= 1");
    }

    // One pool of 2 * n_pairs trajectories; pair p is (2p, 2p+1).
    std::vector<Sequence> pool;
    pool.reserve(2 * std::size_t(config.n_pairs));
    for (int i = 0; i < 2 * config.n_pairs; ++i) {
        RngStream rng(config.seed, RngStream::substream({kTagData, std::uint64_t(i)}));
        pool.push_back(var1_generate(config.data, rng));
    }
    const SequenceDataset dataset{std::vector<Sequence>(pool)};

    MedianHeuristicConfig median;
    median.alpha = config.alpha;
    median.seed = RngStream::substream({kTagMedian, config.seed});
    const double sigma = median_heuristic(dataset, median);
    const RbfStaticKernel kernel(sigma);

    // Ground truth per (pair, truncation), reused across every resample.
    const int max_trunc = *std::max_element(config.truncations.begin(), config.truncations.end());
    Eigen::MatrixXd exact(config.n_pairs, max_trunc + 1);
    parallel_for(std::size_t(config.n_pairs), config.threads, [&](std::size_t pair) {
        const LeveledKernelValues values =
            sig_kernel_dp({max_trunc, kernel}, pool[2 * pair], pool[2 * pair + 1]);
        double acc = 0.0;
        for (int m = 0; m <= max_trunc; ++m) {
            acc += values.levels[std::size_t(m)];
            exact(Eigen::Index(pair), m) = acc;
        }
    });

    BenchResult result;
    result.bandwidth = sigma;
    const std::size_t evals = std::size_t(config.n_pairs) * std::size_t(config.n_resamples);
    std::vector<double> devsq(evals);

    for (FeatureMethod method : config.methods) {
        for (int trunc : config.truncations) {
            for (int rff_dim : config.rff_dims) {
                parallel_for(evals, config.threads, [&](std::size_t idx) {
                    const std::size_t pair = idx / std::size_t(config.n_resamples);
                    const std::size_t resample = idx % std::size_t(config.n_resamples);
                    const std::uint64_t cell_seed = RngStream::substream(
                        {kTagCell, config.seed, method_tag(method), std::uint64_t(trunc),
                         std::uint64_t(rff_dim), pair, resample});
                    const SequenceDataset xy{{pool[2 * pair], pool[2 * pair + 1]}};
                    const RandomFourierWeights weights =
                        sample_spectral(sigma, config.data.dim, rff_dim, trunc, cell_seed);
                    std::vector<LeveledFeatures> feats;
                    if (method == FeatureMethod::RfsfDp) {
                        feats = rfsf_dp_features(weights, trunc, xy, 1);
                    } else {
                        const TrpProjection projection =
                            sample_trp_projection(rff_dim, trunc, cell_seed);
                        feats = rfsf_trp_features(weights, projection, trunc, xy, 1);
                    }
                    double approx = 0.0;
                    for (int m = 0; m <= trunc; ++m) {
                        approx += feats[0].levels[std::size_t(m)].dot(
                            feats[1].levels[std::size_t(m)]);
                    }
                    const double dev = approx - exact(Eigen::Index(pair), trunc);
                    devsq[idx] = dev * dev;
                });

                double mean = 0.0;
                for (double v : devsq) mean += v;
                mean /= double(evals);
                double var = 0.0;
                for (double v : devsq) var += (v - mean) * (v - mean);
                const double stddev = evals > 1 ? std::sqrt(var / double(evals - 1)) : 0.0;
                result.rows.push_back({method, trunc, rff_dim, mean, stddev, long(evals)});
            }
        }
    }
    return result;
}

double loglog_slope(const BenchResult& result, FeatureMethod method, int truncation) {
    std::vector<double> lx, ly;
    for (const BenchRow& row : result.rows) {
        if (row.method != method || row.truncation != truncation) continue;
        if (!(row.mse_mean > 0.0)) {
            throw InvalidParameter("log-log slope requires positive mse values");
        }
        lx.push_back(std::log(double(row.rff_dim)));
        ly.push_back(std::log(row.mse_mean));
    }
    if (lx.size() < 3) {
        throw InvalidParameter("log-log slope requires at least 3 sweep points");
    }
    const double n = double(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

} // namespace sigkern
