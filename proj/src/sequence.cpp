#include "sigkern/sequence.hpp"

#include <utility>

#include "sigkern/errors.hpp"

namespace sigkern {

Sequence::Sequence(Matrix values) : values_(std::move(values)) {
    if (values_.rows() < 1 || values_.cols() < 1) {
        throw InvalidParameter("sequence needs at least one state of dimension >= 1");
    }
    if (!values_.allFinite()) {
        throw InvalidParameter("sequence contains non-finite entries");
    }
}

Sequence diff(const Sequence& x) {
    const Eigen::Index n = x.length();
    if (n < 2) {
        throw DegenerateSequence("diff requires length >= 2");
    }
    Matrix d(n - 1, x.dim());
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        d.row(i) = x.values().row(i + 1) - x.values().row(i);
    }
    return Sequence(std::move(d));
}

double one_variation(const Sequence& x) {
    double total = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.length(); ++i) {
        total += (x.values().row(i + 1) - x.values().row(i)).norm();
    }
    return total;
}

SequenceDataset::SequenceDataset(std::vector<Sequence> sequences)
    : sequences_(std::move(sequences)) {
    if (sequences_.empty()) {
        throw InvalidParameter("dataset must contain at least one sequence");
    }
    dim_ = sequences_.front().dim();
    for (const Sequence& s : sequences_) {
        if (s.dim() != dim_) {
            throw DimensionMismatch("all sequences in a dataset must share one state dimension");
        }
        max_len_ = std::max(max_len_, s.length());
    }
}

SequenceDataset tabulate(const SequenceDataset& data) {
    std::vector<Sequence> padded;
    padded.reserve(data.size());
    for (const Sequence& s : data) {
        if (s.length() == data.max_len()) {
            padded.push_back(s);
            continue;
        }
        Matrix v(data.max_len(), s.dim());
        v.topRows(s.length()) = s.values();
        v.bottomRows(data.max_len() - s.length()).rowwise() = s.values().row(s.length() - 1);
        padded.emplace_back(std::move(v));
    }
    return SequenceDataset(std::move(padded));
}

} // namespace sigkern
