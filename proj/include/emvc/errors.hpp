#pragma once

#include <stdexcept>
#include <string>

namespace emvc {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid or inconsistent configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Matrix or vector dimensions do not match what an operation requires.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Non-finite values, failed decompositions, or other numeric breakdowns.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// An iterative method hit its iteration cap before reaching tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

// A file's overall structure is wrong (ragged rows, length mismatches, ...).
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A single cell failed to parse; carries 1-based coordinates.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int row, int col)
      : Error(what + " (row " + std::to_string(row) + ", col " +
              std::to_string(col) + ")"),
        row_(row),
        col_(col) {}

  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_;
  int col_;
};

// All pairwise distances are zero, so no kernel bandwidth exists.
class DegenerateScaleError : public Error {
 public:
  using Error::Error;
};

// A stationary distribution with zero mass on some state, which makes the
// weighted spectral problem singular.
class DegenerateDistributionError : public Error {
 public:
  using Error::Error;
};

}  // namespace emvc
