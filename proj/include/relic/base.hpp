#pragma once

#include <stdexcept>
#include <string>

namespace relic {

// Malformed input: structure/family/formula text that does not match the grammar.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller violated an operation contract (bad mode, clashing names, wrong sizes...).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configurable resource cap was hit.  This is never silently turned into a
// "no" answer; callers surface it as a bounded verdict or a distinct exit code.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested value is outside what the chosen representation can answer
// (e.g. an oracle queried beyond its declared rank, an unsupported descriptor).
struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace relic
