#ifndef TEMPSEP_ERRORS_HPP
#define TEMPSEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tempsep {

enum class ErrorKind {
    timestamp_out_of_range,
    self_loop,
    unknown_vertex,
    empty_timestamp_set,
    bad_interval,
    bad_timeline,
    bad_instance,
    unseparable,
    infeasible_master,
    limits_exceeded,
    invalid_set_cover,
    not_a_cover,
    not_a_separator,
    uncoverable,
    parse_error,
    inconsistent_header,
    missing_file,
    malformed_time,
    empty_window,
    no_path,
    degenerate_endpoints,
    no_feasible_pair,
    bad_params,
};

const char* to_string(ErrorKind kind);

// All recoverable failures surface as one exception type carrying a kind,
// so callers (notably the CLI) can map them to exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace tempsep

#endif
