#ifndef KPK_IO_HPP
#define KPK_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kpk/types.hpp"

namespace kpk {

struct CsvOptions {
    bool has_header = false;
    // Column holding ground-truth labels; negative values count from the end
    // (-1 is the last column). Label cells may be any string and are encoded
    // as integers in order of first appearance.
    std::optional<int> label_column;
    char delimiter = ',';
};

// Parses a rectangular numeric table. Errors name the offending line (1-based,
// counting the header) and column.
Dataset read_csv(std::istream& in, const CsvOptions& options = {});
Dataset load_csv(const std::string& path, const CsvOptions& options = {});

// Writes features as x0..x{p-1} plus a trailing `label` column when present.
void write_csv(std::ostream& out, const Dataset& data, bool header = true);
void save_csv(const std::string& path, const Dataset& data, bool header = true);

// One integer label per line, or the first column of a CSV; blank lines are
// skipped. Non-integer labels are encoded by first appearance.
Labels read_labels(std::istream& in, bool has_header = false);
Labels load_labels(const std::string& path, bool has_header = false);

// Centers every column and scales it to unit sample standard deviation;
// constant columns are only centered.
Matrix standardize(const Matrix& x);

}  // namespace kpk

#endif  // KPK_IO_HPP
