#pragma once

#include <stdexcept>
#include <string>

namespace pbna {

// Malformed graph file or graph that violates the input contract.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user-supplied parameter (m, n, trials, ...).
struct param_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The exact oracle would exceed its term/path budget.
struct scale_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A transfer function is identically zero (empty path set). Callers that hit
// this should go through the regime classifier instead of the general tests.
struct zero_transfer : std::runtime_error {
  int i, j;  // 1-based session indices: P_ij is empty
  zero_transfer(int i_, int j_)
      : std::runtime_error("transfer function m_" + std::to_string(i_) + std::to_string(j_) +
                           " is identically zero (no path); use the regime classifier"),
        i(i_),
        j(j_) {}
};

// A sampled point made a ratio denominator vanish; the caller should resample.
struct resample_needed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "Must not occur" verification failed; indicates a bug, not bad input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace pbna
