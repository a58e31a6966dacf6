#pragma once

#include <stdexcept>
#include <string>

namespace capprox {

// Raised when floating-point trouble surfaces (NaN/Inf in an assembled
// matrix, SVD non-convergence, divergent tail sums). CLI maps this to
// exit code 3.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when two independently computed bounds contradict each other
// (a lower bound exceeding an upper bound at the same index). This always
// signals a bug somewhere, never a tolerance issue. CLI exit code 2.
struct SoundnessError : std::runtime_error {
  explicit SoundnessError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace capprox
