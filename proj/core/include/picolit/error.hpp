#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace picolit {

/// Base class for all errors raised by picolit.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or record. `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), m_line(line)
    {}

    std::size_t line() const noexcept { return m_line; }

  private:
    std::size_t m_line;
};

/// A file could not be opened, read or written.
class IoError : public Error {
  public:
    using Error::Error;
};

/// A line of input that was refused during ingest, with the reason recorded.
struct Rejection {
    std::size_t line_no = 0;
    std::string reason;

    friend bool operator==(const Rejection&, const Rejection&) = default;
};

}  // namespace picolit
