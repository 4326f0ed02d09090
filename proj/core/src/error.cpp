#include "kpk/error.hpp"

namespace kpk {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid_input";
        case ErrorKind::invalid_exponent: return "invalid_exponent";
        case ErrorKind::dimension_mismatch: return "dimension_mismatch";
        case ErrorKind::domain_violation: return "domain_violation";
        case ErrorKind::empty_cluster: return "empty_cluster";
        case ErrorKind::degenerate: return "degenerate";
        case ErrorKind::invalid_config: return "invalid_config";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

}  // namespace kpk
