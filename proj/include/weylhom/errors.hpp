#pragma once

#include <stdexcept>
#include <string>

namespace weylhom {

// Raised when a cross-check that must hold by construction fails: such a
// failure indicates a bug in this library, never a property of the input.
struct internal_check_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace weylhom
