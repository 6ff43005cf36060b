#pragma once

#include <stdexcept>
#include <string>

namespace dps {

// Every library failure derives from Error so the CLI can map it onto an
// exit code without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class MissingProperty : public Error {
 public:
  MissingProperty(const std::string& material, const std::string& field)
      : Error("material '" + material + "' lacks property '" + field + "'"),
        material_(material), field_(field) {}
  const std::string& material() const { return material_; }
  const std::string& field() const { return field_; }

 private:
  std::string material_, field_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class AmbiguousBand : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Parse and schema problems; carries the offending line when known.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace dps
