#pragma once

#include <stdexcept>
#include <string>

namespace ffdist {

// Error taxonomy mirrored by the CLI exit codes:
//   usage_error -> 1, capacity_error -> 2, internal_error -> 3.

/// Caller passed inconsistent or malformed inputs.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The request exceeds the supported desk-scale envelope (dense tables,
/// ambient-space sizes). The message names the offending limit.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. This is never a valid state; it
/// indicates a bug in the library itself.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ffdist
