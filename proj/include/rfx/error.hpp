#pragma once

#include <stdexcept>
#include <string>

namespace rfx {

// Raised for invalid input: ring mismatch, unknown variable, malformed text.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rfx
