#pragma once

#include <stdexcept>
#include <string>

namespace bohrnet {

// Invalid or malformed input (spec files, datasets, CLI arguments).
struct SpecError : std::runtime_error {
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// A configured enumeration cap was exceeded; `bound` is the count reached
// when enumeration stopped.
struct CapExceeded : std::runtime_error {
  long long bound;
  CapExceeded(const std::string& what, long long bound_)
      : std::runtime_error(what), bound(bound_) {}
};

// A context required by an intersection functor is missing from its poset.
// This signals a poset-closure bug, not bad input.
struct ClosureError : std::logic_error {
  explicit ClosureError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace bohrnet
