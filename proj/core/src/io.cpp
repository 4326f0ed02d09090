#include "kpk/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "kpk/error.hpp"

namespace kpk {

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, delim)) cells.push_back(cell);
    if (!line.empty() && line.back() == delim) cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\"");
    return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& text, double& value) {
    const std::string cell = trim(text);
    if (cell.empty()) return false;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (*begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    return ec == std::errc() && ptr == end;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

class LabelEncoder {
public:
    int encode(const std::string& raw) {
        auto [it, inserted] = ids_.try_emplace(trim(raw), static_cast<int>(ids_.size()));
        return it->second;
    }

private:
    std::unordered_map<std::string, int> ids_;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::io, "cannot open " + path);
    }
    return in;
}

}  // namespace

Dataset read_csv(std::istream& in, const CsvOptions& options) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    std::optional<std::size_t> label_col;
    std::vector<std::vector<double>> rows;
    Labels labels;
    LabelEncoder encoder;

    auto resolve_label_column = [&](std::size_t columns) {
        if (!options.label_column) return;
        const int c = *options.label_column;
        const long idx = c < 0 ? static_cast<long>(columns) + c : c;
        if (idx < 0 || idx >= static_cast<long>(columns)) {
            throw Error(ErrorKind::invalid_input,
                        "label column " + std::to_string(c) + " out of range for " +
                            std::to_string(columns) + " columns");
        }
        label_col = static_cast<std::size_t>(idx);
    };

    bool header_pending = options.has_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        const auto cells = split(line, options.delimiter);
        if (width == 0) {
            width = cells.size();
            resolve_label_column(width);
        } else if (cells.size() != width) {
            throw Error(ErrorKind::invalid_input,
                        "line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                            " fields, found " + std::to_string(cells.size()));
        }
        if (header_pending) {
            header_pending = false;
            continue;
        }
        std::vector<double> row;
        row.reserve(width);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (label_col && c == *label_col) {
                labels.push_back(encoder.encode(cells[c]));
                continue;
            }
            double v = 0.0;
            if (!parse_double(cells[c], v) || !std::isfinite(v)) {
                throw Error(ErrorKind::invalid_input,
                            "line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                                ": not a finite number: '" + trim(cells[c]) + "'");
            }
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw Error(ErrorKind::invalid_input, "no data rows");
    }
    const std::size_t p = rows.front().size();
    if (p == 0) {
        throw Error(ErrorKind::invalid_input, "no feature columns");
    }
    Dataset out;
    out.x.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < p; ++c) {
            out.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
        }
    }
    out.labels = std::move(labels);
    return out;
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    auto in = open_input(path);
    return read_csv(in, options);
}

void write_csv(std::ostream& out, const Dataset& data, bool header) {
    const auto old_precision = out.precision(17);
    if (header) {
        for (Eigen::Index c = 0; c < data.dim(); ++c) {
            out << (c ? "," : "") << 'x' << c;
        }
        if (data.has_labels()) out << ",label";
        out << '\n';
    }
    for (Eigen::Index i = 0; i < data.size(); ++i) {
        for (Eigen::Index c = 0; c < data.dim(); ++c) {
            out << (c ? "," : "") << data.x(i, c);
        }
        if (data.has_labels()) out << ',' << data.labels[static_cast<std::size_t>(i)];
        out << '\n';
    }
    out.precision(old_precision);
}

void save_csv(const std::string& path, const Dataset& data, bool header) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::io, "cannot write " + path);
    }
    write_csv(out, data, header);
}

Labels read_labels(std::istream& in, bool has_header) {
    std::string line;
    Labels labels;
    LabelEncoder encoder;
    bool all_integer = true;
    std::vector<std::string> raw;
    bool skip = has_header;
    while (std::getline(in, line)) {
        if (is_blank(line)) continue;
        if (skip) {
            skip = false;
            continue;
        }
        const std::string cell = trim(split(line, ',').front());
        raw.push_back(cell);
        int v = 0;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || ptr != cell.data() + cell.size()) all_integer = false;
    }
    for (const auto& cell : raw) {
        if (all_integer) {
            labels.push_back(std::stoi(cell));
        } else {
            labels.push_back(encoder.encode(cell));
        }
    }
    return labels;
}

Labels load_labels(const std::string& path, bool has_header) {
    auto in = open_input(path);
    return read_labels(in, has_header);
}

Matrix standardize(const Matrix& x) {
    Matrix out = x.rowwise() - x.colwise().mean();
    if (x.rows() < 2) return out;
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
        const double sd = std::sqrt(out.col(c).squaredNorm() / static_cast<double>(x.rows() - 1));
        if (sd > 0.0) out.col(c) /= sd;
    }
    return out;
}

}  // namespace kpk
