#ifndef RCNS_ERRORS_HPP
#define RCNS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rcns {

// Mirrors the status codes of the public C API (include/rcns.h).
enum class Status : int {
  ok = 0,
  invalid_argument = 1,
  domain_error = 2,
  config_error = 3,
  numeric_error = 4,
  io_error = 5,
  unsupported = 6,
};

class Error : public std::runtime_error {
 public:
  Error(Status code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Status code() const noexcept { return code_; }

 private:
  Status code_;
};

struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& what) : Error(Status::invalid_argument, what) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(Status::domain_error, what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(Status::config_error, what) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& what) : Error(Status::numeric_error, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(Status::io_error, what) {}
};

struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& what) : Error(Status::unsupported, what) {}
};

}  // namespace rcns

#endif
