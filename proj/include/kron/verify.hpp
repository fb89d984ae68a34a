#pragma once

#include <string>
#include <vector>

namespace kron {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  double elapsed_ms = 0.0;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  int failures() const;
};

// Built-in cross-check suite: every check recomputes its expectation through
// an independent route (closed forms, brute enumeration, frozen constants).
// The quick tier finishes in a few seconds; full adds the heavier grids.
VerifyReport run_verify(bool full, int workers = 1);

}  // namespace kron
