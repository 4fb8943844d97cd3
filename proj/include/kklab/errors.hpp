#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace kklab {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. `position` is a 1-based line number for edge
/// lists and a 0-based byte offset for graph6.
class ParseError : public Error {
  public:
    ParseError(const std::string & what, std::size_t position)
        : Error(what), position_(position) {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

/// A documented precondition does not hold. Carries an optional witness
/// (usually a graph6 string or a human-readable subgraph description).
class PreconditionError : public Error {
  public:
    explicit PreconditionError(const std::string & what,
                               std::optional<std::string> witness = std::nullopt)
        : Error(what), witness_(std::move(witness)) {}

    const std::optional<std::string> & witness() const noexcept { return witness_; }

  private:
    std::optional<std::string> witness_;
};

/// A configured work budget would be exceeded. Never a silent truncation.
class ResourceGuardError : public Error {
  public:
    using Error::Error;
};

} // namespace kklab
