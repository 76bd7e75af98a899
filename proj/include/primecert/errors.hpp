#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace primecert {

// Named violations of the admissible parameter system. The names are part of
// the CLI contract and appear verbatim in error output.
enum class ConstraintCode {
  M_RANGE,
  DELTA_RANGE,
  A_RANGE,
  X0_FLOOR,
  T1_RANGE,
  SIGMA0_ROW,
  S5_PRECONDITION,
  LOG_RATIO,
  DOMAIN,
};

std::string_view to_string(ConstraintCode code);

class ConstraintError : public std::domain_error {
 public:
  ConstraintError(ConstraintCode code, const std::string& detail)
      : std::domain_error(std::string(to_string(code)) + ": " + detail), code_(code) {}
  ConstraintCode code() const noexcept { return code_; }

 private:
  ConstraintCode code_;
};

// Malformed or inconsistent input data (zero files, constants files, reports).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
  DataError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " at line " + std::to_string(line)), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

class RootIsolationError : public std::runtime_error {
 public:
  explicit RootIsolationError(int degree)
      : std::runtime_error("root isolation failed for shifted Legendre polynomial of degree " +
                           std::to_string(degree)),
        degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

}  // namespace primecert
