#pragma once

#include <stdexcept>
#include <string>

namespace effdim {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Index (model size d, block offset) outside the materialized range.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The signal's materialized prefix is too short for the requested oracle.
class HorizonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem hypothesis or run configuration is violated; raised before any
/// simulation starts.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace effdim

namespace effdim {

/// Malformed signal file, CSV or config text.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace effdim
