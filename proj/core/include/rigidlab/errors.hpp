#pragma once

#include <stdexcept>
#include <string>

namespace rigidlab {

// Thrown when an exhaustive enumeration would exceed a configured cap.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed text input (query set files, basis files).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration and input-space caps. Defaults are sized so interactive
// desk-scale runs stay under a few minutes.
struct Caps {
  unsigned long long max_subspaces = 50'000'000;  // subspace enumeration
  int max_coset_dim = 24;                         // coset walk in distance queries
  int max_input_log2 = 24;                        // 2^n scans (inputs, far-point search)
};

}  // namespace rigidlab
