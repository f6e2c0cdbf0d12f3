#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fohier {

  // Malformed input: regex syntax, file syntax, unknown letters.
  class ParseError : public std::runtime_error {
   public:
    ParseError(std::string const& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)),
          _offset(offset) {}
    explicit ParseError(std::string const& what) : std::runtime_error(what), _offset(0) {}

    std::size_t offset() const noexcept {
      return _offset;
    }

   private:
    std::size_t _offset;
  };

  // Bad arguments to an operation (alphabet mismatch, unknown tag, ...).
  class InvalidArgument : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
  };

  // A configured cap was hit. Never converted into a verdict.
  class ResourceLimit : public std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  // A cross-check between two routes disagreed. Indicates a bug.
  class InternalInconsistency : public std::logic_error {
    using std::logic_error::logic_error;
  };

}  // namespace fohier
