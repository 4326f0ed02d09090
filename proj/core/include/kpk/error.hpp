#ifndef KPK_ERROR_HPP
#define KPK_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace kpk {

enum class ErrorKind {
    invalid_input,
    invalid_exponent,
    dimension_mismatch,
    domain_violation,
    empty_cluster,
    degenerate,
    invalid_config,
    io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure surfaced by the library carries a kind so the CLI can emit a
// machine-readable error object.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class EmptyClusterError : public Error {
public:
    explicit EmptyClusterError(int column)
        : Error(ErrorKind::empty_cluster,
                "cluster " + std::to_string(column) + " has zero total weight"),
          column_(column) {}

    int column() const noexcept { return column_; }

private:
    int column_;
};

}  // namespace kpk

#endif  // KPK_ERROR_HPP
