#pragma once

#include <stdexcept>
#include <string>

namespace esg {

/// Base of every error raised by the pipeline. `kind()` is the stable,
/// machine-parsable tag used by the CLI error line.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual const char* kind() const noexcept { return "error"; }
};

/// Malformed input: bad JSON, missing field, unknown label, bad CSV row.
class SchemaError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "schema"; }
};

/// Network failure or missing fixture.
class TransportError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "transport"; }
};

/// Well-formed value that violates a domain invariant (e.g. low > high).
class InvariantError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "invariant"; }
};

/// File cannot be read or written.
class IoError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "io"; }
};

class InsufficientData : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "insufficient-data"; }
};

/// Zero-variance input to a correlation.
class DegenerateSeries : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "degenerate-series"; }
};

}  // namespace esg
