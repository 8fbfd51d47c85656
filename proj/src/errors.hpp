#pragma once

#include <stdexcept>
#include <string>

namespace revrank {

// Error taxonomy shared by the C API status codes and the CLI exit codes.
enum class ErrorKind {
    Io = 1,      // unreadable/missing/corrupt files
    Config = 2,  // bad configuration or usage
    Domain = 3,  // data violates a computational contract
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline Error io_error(std::string msg) { return Error(ErrorKind::Io, std::move(msg)); }
inline Error config_error(std::string msg) { return Error(ErrorKind::Config, std::move(msg)); }
inline Error domain_error(std::string msg) { return Error(ErrorKind::Domain, std::move(msg)); }

}  // namespace revrank
