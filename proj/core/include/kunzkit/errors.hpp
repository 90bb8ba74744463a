#pragma once

#include <stdexcept>
#include <string>

namespace kunzkit {

/// Rejected input: bad generators, violated hypotheses, malformed tables.
/// The CLI maps this to exit code 2.
class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// A postcondition with a mathematical guarantee failed at runtime.  Always
/// an implementation bug, never a user mistake.  The CLI maps this to exit
/// code 1.
class invariant_error : public std::runtime_error {
public:
  explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kunzkit
