#pragma once

#include <stdexcept>
#include <string>

namespace gwve {

// Population or enumeration grew past a configured cap.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A sampling attempt budget was exhausted.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A tilted-law or transform normalizer vanished (or underflowed).
struct DegenerateTiltError : std::runtime_error {
  explicit DegenerateTiltError(const std::string& what) : std::runtime_error(what) {}
};

// An environment with a zero-mean generation cannot be summarized.
struct DegenerateEnvironmentError : std::runtime_error {
  explicit DegenerateEnvironmentError(const std::string& what) : std::runtime_error(what) {}
};

// Derivative order beyond the configured maximum.
struct UnsupportedOrderError : std::runtime_error {
  explicit UnsupportedOrderError(const std::string& what) : std::runtime_error(what) {}
};

// An internal identity failed to hold numerically (e.g. a probability
// table that must sum to one does not).
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// A change of measure whose normalizer is identically zero.
struct EmptyMeasureError : std::runtime_error {
  explicit EmptyMeasureError(const std::string& what) : std::runtime_error(what) {}
};

// Spined-tree concatenation at a position the tree algebra does not define.
struct InvalidConcatenationError : std::runtime_error {
  explicit InvalidConcatenationError(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureError : std::runtime_error {
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gwve
