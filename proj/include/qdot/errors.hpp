#pragma once

#include <stdexcept>
#include <string>

namespace qdot {

// Thrown when an iterative or series method cannot reach its accuracy
// target (propagator overflow guard, integrator step underflow,
// eigensolver residual failure).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qdot
