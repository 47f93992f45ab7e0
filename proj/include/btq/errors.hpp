#pragma once

#include <stdexcept>
#include <string>

namespace btq {

// Base of every error raised by the library. `exit_code()` is what the CLI
// returns when the error escapes a subcommand.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, int exit_code = 2)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what, 2) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what, 2) {}
};

// A Laurent-series computation needed digits beyond the tracked precision.
// Callers retry at doubled precision.
class PrecisionLoss : public Error {
 public:
  explicit PrecisionLoss(const std::string& what) : Error(what, 4) {}
};

class NotASquare : public Error {
 public:
  explicit NotASquare(const std::string& what) : Error(what, 3) {}
};

class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what) : Error(what, 3) {}
};

class SearchExhausted : public Error {
 public:
  explicit SearchExhausted(const std::string& what) : Error(what, 4) {}
};

class RamifiedAtInfinity : public Error {
 public:
  explicit RamifiedAtInfinity(const std::string& what) : Error(what, 3) {}
};

class NonIntegral : public Error {
 public:
  explicit NonIntegral(const std::string& what) : Error(what, 2) {}
};

class StabilizerAnomalousOrder : public Error {
 public:
  explicit StabilizerAnomalousOrder(const std::string& what) : Error(what, 2) {}
};

class NonterminationGuard : public Error {
 public:
  explicit NonterminationGuard(const std::string& what) : Error(what, 4) {}
};

class ResourceGuard : public Error {
 public:
  explicit ResourceGuard(const std::string& what) : Error(what, 4) {}
};

}  // namespace btq
