#pragma once

#include <stdexcept>

namespace qwalk {

// Bad numeric input (non-normalized spinor, non-positive tau/m/n, ...).
struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// theta is one of the excluded values {0, pi/2, pi, 3pi/2} (within 1e-9).
struct ForbiddenTheta : InvalidParams {
  using InvalidParams::InvalidParams;
};

// Requested an analysis family with no implemented closed form (m >= 3).
struct UnsupportedCase : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The z1/z2 eigenvalues of the kick-transfer matrix coincide; the closed-form
// coefficient expressions divide by z2 - z1. Callers fall back to powering.
struct DegenerateZ : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Amplitude field with no support.
struct EmptyState : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Inverse transform asked for fewer k-samples than the field's support needs.
struct InsufficientSamples : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qwalk
