#pragma once

#include <stdexcept>
#include <string>

namespace volcp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// S(x,theta) failed the positive-definiteness floor.
struct NonPositiveDefiniteError : Error {
  using Error::Error;
};

struct OutOfBoxError : Error {
  using Error::Error;
};

struct NonFiniteError : Error {
  using Error::Error;
};

struct StateExitedDomainError : Error {
  using Error::Error;
};

struct EmptySegmentError : Error {
  using Error::Error;
};

struct SegmentTooShortError : Error {
  using Error::Error;
};

struct OptimizerFailedError : Error {
  using Error::Error;
};

struct TruncationTooSmallError : Error {
  using Error::Error;
};

struct DegenerateChangeError : Error {
  using Error::Error;
};

struct UnknownTruthError : Error {
  using Error::Error;
};

// Bad user input: scenario/config fields, CLI flag combinations.
struct ValidationError : Error {
  using Error::Error;
};

// Malformed input file; line is 1-based and includes the header.
struct CsvParseError : Error {
  int line;
  CsvParseError(const std::string& msg, int line_number)
      : Error(msg + " (line " + std::to_string(line_number) + ")"), line(line_number) {}
};

// Monte Carlo run exceeded the tolerated replication failure rate.
struct ReplicationFailureError : Error {
  using Error::Error;
};

}  // namespace volcp
