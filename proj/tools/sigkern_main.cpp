#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sigkern/augment.hpp"
#include "sigkern/csv_io.hpp"
#include "sigkern/errors.hpp"
#include "sigkern/parallel.hpp"
#include "sigkern/rf_features.hpp"
#include "sigkern/rng.hpp"
#include "sigkern/sig_exact.hpp"
#include "sigkern/static_kernels.hpp"
#include "sigkern/synth_bench.hpp"

namespace {

using namespace sigkern;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

constexpr std::uint64_t kTagGenerate = 0x67656E65;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SIGKERN_SEED")) {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            throw InvalidParameter("SIGKERN_SEED must be an unsigned integer");
        }
        return value;
    }
    return 0;
}

struct KernelFlags {
    std::optional<double> bandwidth;
    std::optional<double> alpha;
};

struct AugmentFlags {
    bool lead_lag = false;
    bool basepoint = false;
    std::optional<double> time_param;

    AugmentationSpec spec() const { return {time_param, basepoint, lead_lag}; }
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& flags) {
    auto* bw = cmd->add_option("--bandwidth", flags.bandwidth, "RBF bandwidth sigma > 0");
    auto* al = cmd->add_option("--alpha", flags.alpha,
                               "median-heuristic scaling alpha > 0 (default 1 when neither "
                               "--bandwidth nor --alpha is given)");
    bw->excludes(al);
    al->excludes(bw);
}

void add_augment_flags(CLI::App* cmd, AugmentFlags& flags) {
    cmd->add_flag("--lead-lag", flags.lead_lag, "interleave the sequence with its one-step lag");
    cmd->add_flag("--basepoint", flags.basepoint, "prepend an all-zero state");
    cmd->add_option("--time-param", flags.time_param,
                    "prepend a time coordinate beta*i/len with this beta > 0");
}

double resolve_bandwidth(const KernelFlags& flags, const SequenceDataset& data,
                         std::uint64_t seed) {
    if (flags.bandwidth) {
        if (!(*flags.bandwidth > 0.0)) throw InvalidParameter("--bandwidth must be positive");
        return *flags.bandwidth;
    }
    MedianHeuristicConfig config;
    config.alpha = flags.alpha.value_or(1.0);
    if (!(config.alpha > 0.0)) throw InvalidParameter("--alpha must be positive");
    config.seed = seed;
    return median_heuristic(data, config);
}

/// Each sequence flattened to a single state of dimension len*d, after
/// tabulation to a common length.
SequenceDataset flatten_dataset(const SequenceDataset& data) {
    const SequenceDataset uniform = tabulate(data);
    std::vector<Sequence> flat;
    flat.reserve(uniform.size());
    for (const Sequence& s : uniform) {
        Matrix row(1, s.length() * s.dim());
        Eigen::Index at = 0;
        for (Eigen::Index i = 0; i < s.length(); ++i) {
            row.block(0, at, 1, s.dim()) = s.values().row(i);
            at += s.dim();
        }
        flat.emplace_back(std::move(row));
    }
    return SequenceDataset(std::move(flat));
}

int run_generate(int n, int d, int len, double sigma, double one_var, std::uint64_t seed,
                 const std::string& out) {
    Var1Config config;
    config.dim = d;
    config.length = len;
    config.noise = sigma;
    config.one_var_target = one_var;

    std::vector<Sequence> sequences;
    std::vector<std::string> ids;
    sequences.reserve(n);
    for (int i = 0; i < n; ++i) {
        RngStream rng(seed, RngStream::substream({kTagGenerate, std::uint64_t(i)}));
        sequences.push_back(var1_generate(config, rng));
        ids.push_back(std::to_string(i));
    }
    write_long_csv(out, SequenceDataset(std::move(sequences)), ids);
    return 0;
}

int run_features(const std::string& input, const std::string& out, const std::string& method_name,
                 int trunc, int rff_dim, const KernelFlags& kernel, const AugmentFlags& augment,
                 bool normalize, std::uint64_t seed, int threads) {
    const FeatureMethod method = parse_method(method_name);
    if (method == FeatureMethod::RfsfFull) {
        throw InvalidParameter("--method must be rfsf-dp or rfsf-trp");
    }
    const LabeledSequences labeled = read_long_csv(input);
    const SequenceDataset data = apply_augmentations(augment.spec(), labeled.data);
    const double sigma = resolve_bandwidth(kernel, data, seed);
    const RandomFourierWeights weights =
        sample_spectral(sigma, int(data.dim()), rff_dim, trunc, seed);

    std::vector<LeveledFeatures> features;
    if (method == FeatureMethod::RfsfDp) {
        features = rfsf_dp_features(weights, trunc, data, threads);
    } else {
        features = rfsf_trp_features(weights, sample_trp_projection(rff_dim, trunc, seed), trunc,
                                     data, threads);
    }

    std::vector<Vector> rows;
    rows.reserve(features.size());
    for (const LeveledFeatures& f : features) {
        rows.push_back(normalize ? normalize_features(f.flat()) : f.flat());
    }
    write_features_csv(out, labeled.ids, rows);
    return 0;
}

int run_gram(const std::string& input, const std::string& out, const std::string& method,
             int trunc, int rff_dim, const KernelFlags& kernel, const AugmentFlags& augment,
             bool normalize, std::uint64_t seed, int threads) {
    const LabeledSequences labeled = read_long_csv(input);
    const SequenceDataset data = apply_augmentations(augment.spec(), labeled.data);

    Eigen::MatrixXd gram;
    if (method == "ksig") {
        const double sigma = resolve_bandwidth(kernel, data, seed);
        gram = sig_gram({trunc, RbfStaticKernel(sigma)}, data, threads);
    } else if (method == "rfsf-dp" || method == "rfsf-trp") {
        const double sigma = resolve_bandwidth(kernel, data, seed);
        const RandomFourierWeights weights =
            sample_spectral(sigma, int(data.dim()), rff_dim, trunc, seed);
        std::vector<LeveledFeatures> features;
        if (method == "rfsf-dp") {
            features = rfsf_dp_features(weights, trunc, data, threads);
        } else {
            features = rfsf_trp_features(weights, sample_trp_projection(rff_dim, trunc, seed),
                                         trunc, data, threads);
        }
        gram = feature_gram(features, features, {}, threads);
    } else if (method == "rff-flat" || method == "rbf-flat") {
        const SequenceDataset flat = flatten_dataset(data);
        const double sigma = resolve_bandwidth(kernel, flat, seed);
        const Eigen::Index n = Eigen::Index(flat.size());
        gram.resize(n, n);
        if (method == "rbf-flat") {
            const RbfStaticKernel rbf(sigma);
            parallel_for(std::size_t(n * n), threads, [&](std::size_t cell) {
                const Eigen::Index i = Eigen::Index(cell) / n;
                const Eigen::Index j = Eigen::Index(cell) % n;
                gram(i, j) = rbf(flat[std::size_t(i)].state(0), flat[std::size_t(j)].state(0));
            });
        } else {
            const RandomFourierWeights weights =
                sample_spectral(sigma, int(flat.dim()), rff_dim, 1, seed);
            parallel_for(std::size_t(n * n), threads, [&](std::size_t cell) {
                const Eigen::Index i = Eigen::Index(cell) / n;
                const Eigen::Index j = Eigen::Index(cell) % n;
                gram(i, j) = rff_kernel(weights.levels[0], flat[std::size_t(i)].state(0),
                                        flat[std::size_t(j)].state(0));
            });
        }
    } else {
        throw InvalidParameter("unknown gram method: " + method);
    }

    if (normalize) {
        gram = normalize_kernel(gram, gram.diagonal(), gram.diagonal());
    }
    write_gram_csv(out, gram);
    return 0;
}

int run_bench(const std::string& out, const std::string& slopes_out, int d, int len, double sigma,
              double one_var, const std::vector<std::string>& methods,
              const std::vector<int>& trunc_list, const std::vector<int>& rff_dim_list,
              int n_pairs, int n_resamples, double alpha, std::uint64_t seed, int threads) {
    BenchConfig config;
    config.data.dim = d;
    config.data.length = len;
    config.data.noise = sigma;
    config.data.one_var_target = one_var;
    config.methods.clear();
    for (const std::string& name : methods) config.methods.push_back(parse_method(name));
    config.truncations = trunc_list;
    config.rff_dims = rff_dim_list;
    config.n_pairs = n_pairs;
    config.n_resamples = n_resamples;
    config.alpha = alpha;
    config.seed = seed;
    config.threads = threads;

    const BenchResult result = approx_error_study(config);
    write_bench_csv(out, result);
    write_slopes_csv(slopes_out, result);
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Truncated signature kernels for sequences: exact dynamic-programming "
                 "evaluation and linear-time random Fourier feature approximations"};
    app.require_subcommand(1);

    std::uint64_t seed = default_seed();
    int threads = 0;

    // generate
    auto* generate = app.add_subcommand("generate", "sample VAR(1) sequences to a long CSV");
    int gen_n = 0, gen_d = 0, gen_len = 0;
    double gen_sigma = 0.1, gen_one_var = 1.0;
    std::string gen_out;
    generate->add_option("--n", gen_n, "number of sequences")->required()->check(CLI::PositiveNumber);
    generate->add_option("--d", gen_d, "state dimension")->required()->check(CLI::PositiveNumber);
    generate->add_option("--len", gen_len, "number of VAR steps (emitted length is len+1)")
        ->required()
        ->check(CLI::PositiveNumber);
    generate->add_option("--sigma", gen_sigma, "innovation noise scale");
    generate->add_option("--one-var", gen_one_var, "target 1-variation per sequence");
    generate->add_option("--seed", seed, "RNG seed (default: SIGKERN_SEED or 0)");
    generate->add_option("--out", gen_out, "output CSV path")->required();

    // features
    auto* features = app.add_subcommand("features", "compute random signature features");
    std::string feat_input, feat_out, feat_method;
    int feat_trunc = 0, feat_rff = 0;
    bool feat_normalize = false;
    KernelFlags feat_kernel;
    AugmentFlags feat_augment;
    features->add_option("--input", feat_input, "long-format sequence CSV")->required();
    features->add_option("--out", feat_out, "output CSV path")->required();
    features->add_option("--method", feat_method, "rfsf-dp or rfsf-trp")->required();
    features->add_option("--trunc", feat_trunc, "signature truncation level M")
        ->required()
        ->check(CLI::PositiveNumber);
    features->add_option("--rff-dim", feat_rff, "random Fourier sample size")
        ->required()
        ->check(CLI::PositiveNumber);
    add_kernel_flags(features, feat_kernel);
    add_augment_flags(features, feat_augment);
    features->add_flag("--normalize", feat_normalize, "rescale each feature vector to unit norm");
    features->add_option("--seed", seed, "RNG seed (default: SIGKERN_SEED or 0)");
    features->add_option("--threads", threads, "worker threads (default: all cores)");

    // gram
    auto* gram = app.add_subcommand("gram", "compute a self-Gram matrix");
    std::string gram_input, gram_out, gram_method;
    int gram_trunc = 2, gram_rff = 64;
    bool gram_normalize = false;
    KernelFlags gram_kernel;
    AugmentFlags gram_augment;
    gram->add_option("--input", gram_input, "long-format sequence CSV")->required();
    gram->add_option("--out", gram_out, "output CSV path")->required();
    gram->add_option("--method", gram_method, "ksig, rfsf-dp, rfsf-trp, rff-flat or rbf-flat")
        ->required();
    gram->add_option("--trunc", gram_trunc, "signature truncation level M")
        ->check(CLI::PositiveNumber);
    gram->add_option("--rff-dim", gram_rff, "random Fourier sample size")
        ->check(CLI::PositiveNumber);
    add_kernel_flags(gram, gram_kernel);
    add_augment_flags(gram, gram_augment);
    gram->add_flag("--normalize", gram_normalize, "unit-norm kernel normalization");
    gram->add_option("--seed", seed, "RNG seed (default: SIGKERN_SEED or 0)");
    gram->add_option("--threads", threads, "worker threads (default: all cores)");

    // bench
    auto* bench = app.add_subcommand("bench", "approximation-error study on VAR(1) data");
    std::string bench_out, bench_slopes_out;
    int bench_d = 10, bench_len = 100, bench_pairs = 20, bench_resamples = 20;
    double bench_sigma = 0.1, bench_one_var = 100.0, bench_alpha = 1.0;
    std::vector<std::string> bench_methods = {"rfsf-dp", "rfsf-trp"};
    std::vector<int> bench_truncs = {2, 3};
    std::vector<int> bench_rff_dims = {16, 32, 64, 128, 256, 512};
    bench->add_option("--out", bench_out, "benchmark CSV path")->required();
    bench->add_option("--slopes-out", bench_slopes_out, "slope summary CSV path")->required();
    bench->add_option("--d", bench_d, "state dimension")->check(CLI::PositiveNumber);
    bench->add_option("--len", bench_len, "VAR steps per sequence")->check(CLI::PositiveNumber);
    bench->add_option("--sigma", bench_sigma, "innovation noise scale");
    bench->add_option("--one-var", bench_one_var, "target 1-variation per sequence");
    bench->add_option("--methods", bench_methods, "methods to sweep")->delimiter(',');
    bench->add_option("--trunc-list", bench_truncs, "truncation levels")->delimiter(',');
    bench->add_option("--rff-dim-list", bench_rff_dims, "random Fourier sample sizes")
        ->delimiter(',');
    bench->add_option("--n-pairs", bench_pairs, "sequence pairs")->check(CLI::PositiveNumber);
    bench->add_option("--n-resamples", bench_resamples, "weight redraws per pair")
        ->check(CLI::PositiveNumber);
    bench->add_option("--alpha", bench_alpha, "median-heuristic scaling");
    bench->add_option("--seed", seed, "RNG seed (default: SIGKERN_SEED or 0)");
    bench->add_option("--threads", threads, "worker threads (default: all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help / --version
        }
        std::cerr << "error: " << e.what() << std::endl;
        return kExitUsage;
    }

    if (generate->parsed()) {
        return run_generate(gen_n, gen_d, gen_len, gen_sigma, gen_one_var, seed, gen_out);
    }
    if (features->parsed()) {
        return run_features(feat_input, feat_out, feat_method, feat_trunc, feat_rff, feat_kernel,
                            feat_augment, feat_normalize, seed, threads);
    }
    if (gram->parsed()) {
        return run_gram(gram_input, gram_out, gram_method, gram_trunc, gram_rff, gram_kernel,
                        gram_augment, gram_normalize, seed, threads);
    }
    if (bench->parsed()) {
        return run_bench(bench_out, bench_slopes_out, bench_d, bench_len, bench_sigma,
                         bench_one_var, bench_methods, bench_truncs, bench_rff_dims, bench_pairs,
                         bench_resamples, bench_alpha, seed, threads);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const sigkern::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitUsage;
    } catch (const sigkern::DegenerateBandwidth& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitNumeric;
    } catch (const sigkern::DegenerateTrajectory& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitNumeric;
    } catch (const sigkern::NormalizationError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitNumeric;
    } catch (const sigkern::OracleTooLarge& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitNumeric;
    } catch (const sigkern::MemoryGuardExceeded& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitNumeric;
    } catch (const sigkern::Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitData;
    }
}
