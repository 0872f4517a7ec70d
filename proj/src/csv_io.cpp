#include "sigkern/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_map>

#include "sigkern/errors.hpp"

namespace sigkern {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
    throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& path, std::size_t line, const std::string& field) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        fail(path, line, "invalid numeric value '" + field + "'");
    }
    return value;
}

long parse_long(const std::string& path, std::size_t line, const std::string& field) {
    long value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        fail(path, line, "invalid integer value '" + field + "'");
    }
    return value;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

} // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    (void)ec;
    return std::string(buffer, ptr);
}

LabeledSequences read_long_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) fail(path, 1, "missing header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "seq_id" || header[1] != "t") {
        fail(path, line_no, "header must be seq_id,t,x1,...,xd");
    }
    const std::size_t dim = header.size() - 2;
    for (std::size_t k = 0; k < dim; ++k) {
        if (header[k + 2] != "x" + std::to_string(k + 1)) {
            fail(path, line_no, "header must be seq_id,t,x1,...,xd");
        }
    }

    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows_per_id;
    std::unordered_map<std::string, std::size_t> index_of;
    std::string last_id;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            fail(path, line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                    std::to_string(fields.size()));
        }
        const std::string& id = fields[0];
        auto [it, inserted] = index_of.try_emplace(id, ids.size());
        if (inserted) {
            ids.push_back(id);
            rows_per_id.emplace_back();
        } else if (id != last_id) {
            fail(path, line_no, "rows of seq_id '" + id + "' are not contiguous");
        }
        last_id = id;

        std::vector<double>& rows = rows_per_id[it->second];
        const long t = parse_long(path, line_no, fields[1]);
        const long expected_t = long(rows.size() / dim) + 1;
        if (t != expected_t) {
            fail(path, line_no,
                 "t must count 1,2,... per sequence; expected " + std::to_string(expected_t) +
                     ", got " + std::to_string(t));
        }
        for (std::size_t k = 0; k < dim; ++k) {
            rows.push_back(parse_double(path, line_no, fields[k + 2]));
        }
    }
    if (ids.empty()) fail(path, line_no, "file contains no data rows");

    std::vector<Sequence> sequences;
    sequences.reserve(ids.size());
    for (std::size_t s = 0; s < ids.size(); ++s) {
        const std::vector<double>& rows = rows_per_id[s];
        Matrix values(Eigen::Index(rows.size() / dim), Eigen::Index(dim));
        for (Eigen::Index i = 0; i < values.rows(); ++i) {
            for (Eigen::Index j = 0; j < values.cols(); ++j) {
                values(i, j) = rows[std::size_t(i) * dim + std::size_t(j)];
            }
        }
        sequences.emplace_back(std::move(values));
    }
    return {std::move(ids), SequenceDataset(std::move(sequences))};
}

void write_long_csv(const std::string& path, const SequenceDataset& data,
                    const std::vector<std::string>& ids) {
    if (ids.size() != data.size()) {
        throw DimensionMismatch("one id per sequence is required");
    }
    std::ofstream out = open_output(path);
    out << "seq_id,t";
    for (Eigen::Index k = 0; k < data.dim(); ++k) out << ",x" << (k + 1);
    out << "\n";
    for (std::size_t s = 0; s < data.size(); ++s) {
        const Matrix& values = data[s].values();
        for (Eigen::Index i = 0; i < values.rows(); ++i) {
            out << ids[s] << ',' << (i + 1);
            for (Eigen::Index j = 0; j < values.cols(); ++j) {
                out << ',' << format_double(values(i, j));
            }
            out << "\n";
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_gram_csv(const std::string& path, const Eigen::MatrixXd& gram) {
    std::ofstream out = open_output(path);
    out << "i,j,value\n";
    for (Eigen::Index i = 0; i < gram.rows(); ++i) {
        for (Eigen::Index j = 0; j < gram.cols(); ++j) {
            out << i << ',' << j << ',' << format_double(gram(i, j)) << "\n";
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_features_csv(const std::string& path, const std::vector<std::string>& ids,
                        const std::vector<Vector>& rows) {
    if (ids.size() != rows.size()) {
        throw DimensionMismatch("one id per feature row is required");
    }
    std::ofstream out = open_output(path);
    const Eigen::Index width = rows.empty() ? 0 : rows.front().size();
    out << "seq_id";
    for (Eigen::Index k = 0; k < width; ++k) out << ",f" << (k + 1);
    out << "\n";
    for (std::size_t s = 0; s < rows.size(); ++s) {
        if (rows[s].size() != width) {
            throw DimensionMismatch("feature rows have mixed widths");
        }
        out << ids[s];
        for (Eigen::Index k = 0; k < width; ++k) {
            out << ',' << format_double(rows[s][k]);
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_bench_csv(const std::string& path, const BenchResult& result) {
    std::ofstream out = open_output(path);
    out << "method,trunc,rff_dim,mse_mean,mse_std,n_eval\n";
    for (const BenchRow& row : result.rows) {
        out << method_name(row.method) << ',' << row.truncation << ',' << row.rff_dim << ','
            << format_double(row.mse_mean) << ',' << format_double(row.mse_std) << ','
            << row.n_eval << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_slopes_csv(const std::string& path, const BenchResult& result) {
    std::vector<std::pair<FeatureMethod, int>> curves;
    for (const BenchRow& row : result.rows) {
        const std::pair<FeatureMethod, int> key{row.method, row.truncation};
        if (std::find(curves.begin(), curves.end(), key) == curves.end()) {
            curves.push_back(key);
        }
    }
    std::ofstream out = open_output(path);
    out << "method,trunc,slope\n";
    for (const auto& [method, trunc] : curves) {
        out << method_name(method) << ',' << trunc << ','
            << format_double(loglog_slope(result, method, trunc)) << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

} // namespace sigkern
