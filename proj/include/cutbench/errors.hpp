#pragma once

#include <stdexcept>

namespace cutbench {

/// A solver run failed irrecoverably (non-finite loss, eigensolver breakdown).
/// The bench harness records such runs as status "failed" instead of crashing.
class SolverFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace cutbench
