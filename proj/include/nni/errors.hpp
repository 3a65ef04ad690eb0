#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nni {

struct TreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : TreeError {
  ParseError(const std::string& what, std::size_t offset)
      : TreeError(what + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

struct TaxaMismatch : TreeError {
  using TreeError::TreeError;
};

struct InfiniteDistance : TreeError {
  using TreeError::TreeError;
};

struct InvalidNni : TreeError {
  using TreeError::TreeError;
};

struct ReplayError : TreeError {
  ReplayError(const std::string& what, std::size_t index)
      : TreeError("op " + std::to_string(index) + ": " + what), index(index) {}
  std::size_t index;
};

// An internal consistency check failed (prediction vs. replay, postcondition).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct DeterminismError : std::logic_error {
  using std::logic_error::logic_error;
};

struct StateLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nni
