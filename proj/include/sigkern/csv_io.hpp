#pragma once

#include <string>
#include <vector>

#include "sigkern/rf_features.hpp"
#include "sigkern/sequence.hpp"
#include "sigkern/synth_bench.hpp"

namespace sigkern {

/// Sequences plus the identifiers they carried in the input file, in
/// first-appearance order.
struct LabeledSequences {
    std::vector<std::string> ids;
    SequenceDataset data;
};

/// Long-format sequence CSV: header `seq_id,t,x1,...,xd`, rows grouped by
/// seq_id with t counting 1,2,... inside each group. Parse failures throw
/// ParseError with "path:line:" context.
LabeledSequences read_long_csv(const std::string& path);

void write_long_csv(const std::string& path, const SequenceDataset& data,
                    const std::vector<std::string>& ids);

/// Gram CSV: header `i,j,value`, 0-based indices, row-major order.
void write_gram_csv(const std::string& path, const Eigen::MatrixXd& gram);

/// Feature CSV: header `seq_id,f1,...,fK` over flat feature vectors.
void write_features_csv(const std::string& path, const std::vector<std::string>& ids,
                        const std::vector<Vector>& rows);

/// Benchmark CSV: header `method,trunc,rff_dim,mse_mean,mse_std,n_eval`.
void write_bench_csv(const std::string& path, const BenchResult& result);

/// Slope summary CSV: header `method,trunc,slope`, one row per curve.
void write_slopes_csv(const std::string& path, const BenchResult& result);

/// Shortest round-trip decimal rendering, used by every writer above.
std::string format_double(double value);

} // namespace sigkern
