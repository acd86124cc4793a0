#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace outrank {

/// Broad error category; decides the CLI exit code and HTTP status family.
enum class ErrorKind {
  Usage,   // caller asked for something ill-formed (bad index, too few alternatives)
  Data,    // input documents are inconsistent or incomplete
  Config,  // invalid preference-function thresholds or weights
  NotFound,
  Conflict,
};

/// Every failure raised by the library carries a machine-readable code and,
/// where one exists, a path to the offending element.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message,
        std::string path = {})
      : std::runtime_error(message),
        kind_(kind),
        code_(std::move(code)),
        path_(std::move(path)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorKind kind_;
  std::string code_;
  std::string path_;
};

inline Error usage_error(std::string code, const std::string& message,
                         std::string path = {}) {
  return {ErrorKind::Usage, std::move(code), message, std::move(path)};
}

inline Error data_error(std::string code, const std::string& message,
                        std::string path = {}) {
  return {ErrorKind::Data, std::move(code), message, std::move(path)};
}

inline Error config_error(std::string code, const std::string& message,
                          std::string path = {}) {
  return {ErrorKind::Config, std::move(code), message, std::move(path)};
}

}  // namespace outrank
