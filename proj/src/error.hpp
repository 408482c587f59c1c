#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace jstlabel {

// Values double as CLI exit codes.
enum class ErrorKind : int {
  Usage = 1,
  Validation = 2,
  Invariant = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(ErrorKind::Validation, source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline Error validation_error(const std::string& what) { return Error(ErrorKind::Validation, what); }
inline Error invariant_error(const std::string& what) { return Error(ErrorKind::Invariant, what); }
inline Error usage_error(const std::string& what) { return Error(ErrorKind::Usage, what); }

using WarningSink = std::function<void(const std::string&)>;

// Process-wide sink; an empty sink restores the stderr default.
void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace jstlabel
