#include "sigkern/sig_exact.hpp"

#include <numeric>

#include "sigkern/errors.hpp"
#include "sigkern/parallel.hpp"

namespace sigkern {

namespace {

// Pairwise (cascade) summation over a contiguous span; the level sums mix
// signs, and this keeps the accumulated rounding at O(log n) ulps.
double pairwise_sum(const double* data, std::size_t n) {
    if (n <= 32) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += data[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

// d2[a][b] = K(a+1,b+1) - K(a+1,b) - K(a,b+1) + K(a,b) over the static
// kernel matrix of the two state lists. The row-wise grouping below cancels
// bitwise whenever either sequence repeats a state, so zero increments
// contribute exact zeros.
Matrix cross_difference(const RbfStaticKernel& kernel, const Sequence& x, const Sequence& y) {
    const Eigen::MatrixXd K = kernel.matrix(x.values(), y.values());
    Matrix d2(x.length() - 1, y.length() - 1);
    for (Eigen::Index a = 0; a < d2.rows(); ++a) {
        for (Eigen::Index b = 0; b < d2.cols(); ++b) {
            d2(a, b) = (K(a + 1, b + 1) - K(a + 1, b)) - (K(a, b + 1) - K(a, b));
        }
    }
    return d2;
}

void check_config(const SigKernelConfig& config) {
    if (config.truncation < 1) {
        throw InvalidParameter("signature truncation level must be >= 1");
    }
}

bool next_combination(std::vector<int>& c, int n) {
    const int m = int(c.size());
    for (int i = m - 1; i >= 0; --i) {
        if (c[i] < n - (m - i)) {
            ++c[i];
            for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r *= double(n - k + i) / double(i);
    }
    return r;
}

} // namespace

double LeveledKernelValues::total() const {
    return std::accumulate(levels.begin(), levels.end(), 0.0);
}

LeveledKernelValues sig_kernel_dp(const SigKernelConfig& config, const Sequence& x,
                                  const Sequence& y) {
    check_config(config);
    if (x.dim() != y.dim()) {
        throw DimensionMismatch("sequences must share one state dimension");
    }
    LeveledKernelValues out;
    out.levels.assign(std::size_t(config.truncation) + 1, 0.0);
    out.levels[0] = 1.0;

    const Eigen::Index p = x.length() - 1;
    const Eigen::Index q = y.length() - 1;
    if (p < 1 || q < 1) return out;

    const Matrix d2 = cross_difference(config.kernel, x, y);

    // prefix[a][b] holds k^(m-1) of the prefix pair with a+1 and b+1 states;
    // level m is the full sum of prefix .* d2, and the next prefix table is
    // its shifted inclusive 2-d prefix sum (the shift encodes the strict
    // ordering of signature index tuples).
    Matrix prefix = Matrix::Ones(p, q);
    Matrix g(p, q);
    for (int m = 1; m <= config.truncation; ++m) {
        g = prefix.cwiseProduct(d2);
        out.levels[std::size_t(m)] = pairwise_sum(g.data(), std::size_t(p * q));
        if (m == config.truncation) break;

        for (Eigen::Index a = 0; a < p; ++a) {
            for (Eigen::Index b = 0; b < q; ++b) {
                g(a, b) += (a > 0 ? g(a - 1, b) : 0.0) + (b > 0 ? g(a, b - 1) : 0.0) -
                           (a > 0 && b > 0 ? g(a - 1, b - 1) : 0.0);
            }
        }
        for (Eigen::Index a = 0; a < p; ++a) {
            for (Eigen::Index b = 0; b < q; ++b) {
                prefix(a, b) = (a > 0 && b > 0) ? g(a - 1, b - 1) : 0.0;
            }
        }
    }
    return out;
}

LeveledKernelValues sig_kernel_bruteforce(const SigKernelConfig& config, const Sequence& x,
                                          const Sequence& y) {
    check_config(config);
    if (x.dim() != y.dim()) {
        throw DimensionMismatch("sequences must share one state dimension");
    }
    LeveledKernelValues out;
    out.levels.assign(std::size_t(config.truncation) + 1, 0.0);
    out.levels[0] = 1.0;

    const int p = int(x.length()) - 1;
    const int q = int(y.length()) - 1;
    if (p < 1 || q < 1) return out;

    const Matrix d2 = cross_difference(config.kernel, x, y);

    for (int m = 1; m <= config.truncation; ++m) {
        if (m > p || m > q) break; // empty index sets from here on
        if (binomial(p, m) * binomial(q, m) > 1e7) {
            throw OracleTooLarge("brute-force tuple enumeration exceeds 1e7 terms");
        }

        // Kahan-compensated accumulation; this is the reference value that
        // the dynamic program is judged against.
        double sum = 0.0, carry = 0.0;
        std::vector<int> ti(std::size_t(m), 0);
        std::iota(ti.begin(), ti.end(), 0);
        do {
            std::vector<int> tj(std::size_t(m), 0);
            std::iota(tj.begin(), tj.end(), 0);
            do {
                double prod = 1.0;
                for (int r = 0; r < m; ++r) prod *= d2(ti[std::size_t(r)], tj[std::size_t(r)]);
                const double v = prod - carry;
                const double t = sum + v;
                carry = (t - sum) - v;
                sum = t;
            } while (next_combination(tj, q));
        } while (next_combination(ti, p));
        out.levels[std::size_t(m)] = sum;
    }
    return out;
}

Eigen::MatrixXd sig_gram(const SigKernelConfig& config, const SequenceDataset& X,
                         const SequenceDataset& Y, int threads) {
    check_config(config);
    if (X.dim() != Y.dim()) {
        throw DimensionMismatch("datasets must share one state dimension");
    }
    Eigen::MatrixXd gram(X.size(), Y.size());
    parallel_for(X.size() * Y.size(), threads, [&](std::size_t cell) {
        const std::size_t i = cell / Y.size();
        const std::size_t j = cell % Y.size();
        gram(Eigen::Index(i), Eigen::Index(j)) = sig_kernel_dp(config, X[i], Y[j]).total();
    });
    return gram;
}

Eigen::MatrixXd sig_gram(const SigKernelConfig& config, const SequenceDataset& X, int threads) {
    check_config(config);
    const std::size_t n = X.size();
    Eigen::MatrixXd gram(n, n);
    const std::size_t cells = n * (n + 1) / 2;
    parallel_for(cells, threads, [&](std::size_t cell) {
        // Unrank the upper-triangle cell index.
        std::size_t i = 0;
        std::size_t remaining = cell;
        while (remaining >= n - i) {
            remaining -= n - i;
            ++i;
        }
        const std::size_t j = i + remaining;
        const double v = sig_kernel_dp(config, X[i], X[j]).total();
        gram(Eigen::Index(i), Eigen::Index(j)) = v;
        gram(Eigen::Index(j), Eigen::Index(i)) = v;
    });
    return gram;
}

} // namespace sigkern
